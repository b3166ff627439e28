#include <doctest.h>

#include <cmath>
#include <optional>

#include "chebdim/pricing.hpp"
#include "chebdim/rfem.hpp"

using namespace chebdim;

namespace {

HullWhiteParams desk_hw() {
    HullWhiteParams hw;
    hw.mean_reversion = 0.15;
    hw.vol = 0.008;
    hw.initial_rate = 0.035;
    hw.long_term_level = 0.04;
    return hw;
}

SabrParams desk_sabr() {
    SabrParams sabr;
    sabr.initial_vol = 0.25;
    sabr.vol_of_vol = 0.3;
    sabr.beta = 0.5;
    sabr.correlation = -0.3;
    return sabr;
}

PillarConfig rate_pillars() {
    PillarConfig p;
    p.swap_tenors = {1.0, 2.0, 3.0, 5.0, 7.0, 10.0};
    return p;
}

MarketState rates_market(double r = 0.035) {
    ModelState state;
    state.factors.resize(1);
    state.factors[0] = r;
    return model_to_market(state, desk_hw(), rate_pillars());
}

MarketState vol_market(double r = 0.035, double v = 0.25) {
    PillarConfig pillars = rate_pillars();
    pillars.vol_expiries = {1.0};
    ModelState state;
    state.factors.resize(2);
    state.factors[0] = r;
    state.factors[1] = v;
    return model_to_market(state, desk_hw(), pillars);
}

SwapTrade payer_swap(double maturity, double fixed) {
    SwapTrade swap;
    swap.notional = 1e6;
    swap.fixed_rate = fixed;
    swap.maturity = maturity;
    swap.direction = PayReceive::payer;
    return swap;
}

SwaptionTrade payer_swaption(double strike) {
    SwaptionTrade opt;
    opt.notional = 1e6;
    opt.strike = strike;
    opt.expiry = 1.0;
    opt.underlying_tenor = 5.0;
    opt.direction = PayReceive::payer;
    return opt;
}

}  // namespace

TEST_CASE("black formula matches a frozen reference value and its bounds") {
    CHECK(black_price(100.0, 100.0, 0.2, 1.0, true) ==
          doctest::Approx(7.9655674554058038).epsilon(1e-12));
    // Undiscounted call lies between intrinsic and forward.
    for (double k : {60.0, 90.0, 100.0, 120.0, 180.0}) {
        const double c = black_price(100.0, k, 0.25, 2.0, true);
        CHECK(c >= std::max(100.0 - k, 0.0));
        CHECK(c <= 100.0);
        const double p = black_price(100.0, k, 0.25, 2.0, false);
        // Put-call parity for undiscounted prices.
        CHECK(c - p == doctest::Approx(100.0 - k).epsilon(1e-12));
    }
    // Zero vol collapses onto intrinsic.
    CHECK(black_price(100.0, 80.0, 0.0, 1.0, true) == 20.0);
}

TEST_CASE("smile formula matches the hand-computed at-the-money expansion") {
    // F = K = 0.04, alpha = 0.25, beta = 0.5, rho = -0.3, nu = 0.3, T = 1:
    // sigma = alpha/F^(1-beta) * (1 + T*(0.016276041667 - 0.0140625 + 0.0064875))
    CHECK(hagan_lognormal_vol(0.04, 0.04, 1.0, 0.25, 0.5, -0.3, 0.3) ==
          doctest::Approx(1.2608763020833333).epsilon(1e-12));
    // Continuity across the at-the-money switch.
    const double at = hagan_lognormal_vol(0.04, 0.04, 1.0, 0.25, 0.5, -0.3, 0.3);
    const double near = hagan_lognormal_vol(0.04, 0.04 * (1.0 + 1e-9), 1.0, 0.25, 0.5, -0.3, 0.3);
    CHECK(std::abs(near - at) < 1e-6 * at);
    // beta = 1, nu = 0 reduces to the constant lognormal vol.
    CHECK(hagan_lognormal_vol(0.05, 0.03, 2.0, 0.2, 1.0, 0.0, 0.0) ==
          doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("a swap struck at the quoted par rate has zero value") {
    const MarketState market = rates_market();
    const PricerSetup setup{rate_pillars(), std::nullopt};
    CallCounter counter("test");
    // Pillar maturity: the quoted 10y rate itself.
    const double pv10 =
        price(Trade{payer_swap(10.0, market.swap_rates[5])}, market, 0.0, setup, counter);
    CHECK(std::abs(pv10) < 1e-10 * 1e6);
    // Off-pillar maturity: the bootstrap interpolates the 4y par rate linearly.
    const double par4 = 0.5 * (market.swap_rates[2] + market.swap_rates[3]);
    const double pv4 = price(Trade{payer_swap(4.0, par4)}, market, 0.0, setup, counter);
    CHECK(std::abs(pv4) < 1e-10 * 1e6);
}

TEST_CASE("payer and receiver swaps are mirror images") {
    const MarketState market = rates_market();
    const PricerSetup setup{rate_pillars(), std::nullopt};
    CallCounter counter("test");
    SwapTrade swap = payer_swap(7.0, 0.03);
    const double payer = price(Trade{swap}, market, 0.25, setup, counter);
    swap.direction = PayReceive::receiver;
    const double receiver = price(Trade{swap}, market, 0.25, setup, counter);
    CHECK(payer == doctest::Approx(-receiver).epsilon(1e-14));
    CHECK(payer != 0.0);
}

TEST_CASE("swaption parity and expiry behaviour") {
    PillarConfig pillars = rate_pillars();
    pillars.vol_expiries = {1.0};
    const MarketState market = vol_market();
    const PricerSetup setup{pillars, desk_sabr()};
    CallCounter counter("test");

    SwaptionTrade opt = payer_swaption(0.04);
    SwaptionTrade recv = opt;
    recv.direction = PayReceive::receiver;

    // Parity: payer - receiver = value of the forward swap at the strike.
    const double payer = price(Trade{opt}, market, 0.0, setup, counter);
    const double receiver = price(Trade{recv}, market, 0.0, setup, counter);
    ParCurve curve(market.swap_rates, pillars.swap_tenors);
    double annuity = 0.0;
    for (int i = 1; i <= 5; ++i) annuity += curve.discount(1.0 + i);
    const double forward = (curve.discount(1.0) - curve.discount(6.0)) / annuity;
    CHECK(payer - receiver ==
          doctest::Approx(opt.notional * annuity * (forward - opt.strike)).epsilon(1e-10));

    // At expiry the value is pure intrinsic; just after expiry it is zero.
    const double itm_strike = 0.8 * forward;
    SwaptionTrade at_exp = payer_swaption(itm_strike);
    const double at_expiry = price(Trade{at_exp}, market, 1.0, setup, counter);
    double ann0 = 0.0;
    for (int i = 1; i <= 5; ++i) ann0 += curve.discount(static_cast<double>(i));
    const double fwd0 = (1.0 - curve.discount(5.0)) / ann0;
    CHECK(at_expiry ==
          doctest::Approx(at_exp.notional * ann0 * std::max(fwd0 - itm_strike, 0.0)).epsilon(1e-12));
    CHECK(price(Trade{at_exp}, market, 1.0 + 1e-9, setup, counter) == 0.0);

    // Time value: the option is worth more than its intrinsic before expiry.
    const double intrinsic_now = opt.notional * annuity * std::max(forward - opt.strike, 0.0);
    CHECK(payer > intrinsic_now);
}

TEST_CASE("pricer call accounting is exact") {
    const MarketState market = rates_market();
    const PricerSetup setup{rate_pillars(), std::nullopt};
    const Trade trade{payer_swap(10.0, 0.04)};

    CallCounter counter("test");
    price(trade, market, 0.5, setup, counter);
    CHECK(counter.count() == 1);

    fd_sensitivity(trade, market, 0.5, setup, {2, 1e-4}, counter);
    CHECK(counter.count() == 3);

    BumpConfig bumps;
    all_sensitivities(trade, market, 0.5, setup, bumps, counter);
    CHECK(counter.count() == 3 + 2 * 6);

    // Expired trades still cost a pricer call and report the expiry flag.
    bool expired = false;
    const double pv = price(trade, market, 10.0, setup, counter, &expired);
    CHECK(pv == 0.0);
    CHECK(expired);
    CHECK(counter.count() == 16);
}

TEST_CASE("swap sensitivities live only on pillars inside the maturity") {
    const MarketState market = rates_market();
    const PricerSetup setup{rate_pillars(), std::nullopt};
    const Trade trade{payer_swap(2.0, 0.03)};
    CallCounter counter("test");
    // Bumping the 3y, 5y, 7y or 10y quote leaves every cashflow's discount
    // factor untouched, so the centred difference is exactly zero.
    for (int factor : {2, 3, 4, 5})
        CHECK(fd_sensitivity(trade, market, 0.0, setup, {factor, 1e-4}, counter) == 0.0);
    CHECK(fd_sensitivity(trade, market, 0.0, setup, {0, 1e-4}, counter) != 0.0);
    CHECK(fd_sensitivity(trade, market, 0.0, setup, {1, 1e-4}, counter) != 0.0);
}

TEST_CASE("swap value does not depend on quoted vols") {
    PillarConfig pillars = rate_pillars();
    pillars.vol_expiries = {1.0};
    const MarketState market = vol_market();
    const PricerSetup setup{pillars, desk_sabr()};
    const Trade trade{payer_swap(5.0, 0.03)};
    CallCounter counter("test");
    CHECK(fd_sensitivity(trade, market, 0.0, setup, {6, 1e-3}, counter) == 0.0);
}

TEST_CASE("swaption vega is positive at the money") {
    PillarConfig pillars = rate_pillars();
    pillars.vol_expiries = {1.0};
    const MarketState market = vol_market();
    const PricerSetup setup{pillars, desk_sabr()};
    CallCounter counter("test");
    ParCurve curve(market.swap_rates, pillars.swap_tenors);
    double annuity = 0.0;
    for (int i = 1; i <= 5; ++i) annuity += curve.discount(1.0 + i);
    const double forward = (curve.discount(1.0) - curve.discount(6.0)) / annuity;
    const Trade trade{payer_swaption(forward)};
    CHECK(fd_sensitivity(trade, market, 0.0, setup, {6, 1e-3}, counter) > 0.0);
}

TEST_CASE("pillar sensitivities add up to the parallel-shift sensitivity") {
    const MarketState market = rates_market();
    const PricerSetup setup{rate_pillars(), std::nullopt};
    const Trade trade{payer_swap(10.0, 0.04)};
    CallCounter counter("test");
    BumpConfig bumps;
    const Eigen::VectorXd sens = all_sensitivities(trade, market, 0.0, setup, bumps, counter);

    const double h = bumps.rate_bump;
    MarketState up = market, down = market;
    for (int i = 0; i < 6; ++i) {
        up.set_factor(i, market.factor(i) + h);
        down.set_factor(i, market.factor(i) - h);
    }
    const double parallel =
        (price(trade, up, 0.0, setup, counter) - price(trade, down, 0.0, setup, counter)) /
        (2.0 * h);
    CHECK(std::abs(sens.sum() - parallel) < 0.02 * std::abs(parallel));
}

TEST_CASE("centred differences converge at second order") {
    PillarConfig pillars = rate_pillars();
    pillars.vol_expiries = {1.0};
    const MarketState market = vol_market();
    const PricerSetup setup{pillars, desk_sabr()};
    const Trade trade{payer_swaption(0.04)};
    CallCounter counter("test");

    const auto fd = [&](double h) {
        return fd_sensitivity(trade, market, 0.0, setup, {3, h}, counter);
    };
    const double reference = fd(1e-6);
    const double e1 = std::abs(fd(2e-3) - reference);
    const double e2 = std::abs(fd(1e-3) - reference);
    const double e3 = std::abs(fd(5e-4) - reference);
    REQUIRE(e1 > 0.0);
    REQUIRE(e2 > 0.0);
    const double slope12 = std::log2(e1 / e2);
    const double slope23 = std::log2(e2 / e3);
    CHECK(slope12 > 1.8);
    CHECK(slope23 > 1.5);
}

TEST_CASE("discount curve bootstrap reprices its pillars and extrapolates flat forwards") {
    const MarketState market = rates_market();
    const PillarConfig pillars = rate_pillars();
    ParCurve curve(market.swap_rates, pillars.swap_tenors);

    for (int k = 0; k < pillars.rate_count(); ++k) {
        const int tenor = static_cast<int>(pillars.swap_tenors[static_cast<std::size_t>(k)]);
        double annuity = 0.0;
        for (int i = 1; i <= tenor; ++i) annuity += curve.discount(static_cast<double>(i));
        const double par = (1.0 - curve.discount(static_cast<double>(tenor))) / annuity;
        CHECK(par == doctest::Approx(market.swap_rates[k]).epsilon(1e-12));
    }

    CHECK(curve.discount(0.0) == 1.0);
    CHECK(curve.discount(-1.0) == 1.0);
    const double fwd = std::log(curve.discount(9.0) / curve.discount(10.0));
    CHECK(curve.discount(12.0) ==
          doctest::Approx(curve.discount(10.0) * std::exp(-2.0 * fwd)).epsilon(1e-12));

    // Discounts decrease with tenor for these positive rates.
    for (int i = 1; i <= 10; ++i)
        CHECK(curve.discount(static_cast<double>(i)) < curve.discount(i - 1.0));
}

TEST_CASE("pricing inputs are validated") {
    const MarketState market = rates_market();
    const PricerSetup setup{rate_pillars(), std::nullopt};
    const Trade trade{payer_swap(5.0, 0.03)};
    CallCounter counter("test");
    CHECK_THROWS_AS(fd_sensitivity(trade, market, 0.0, setup, {0, 0.0}, counter),
                    std::invalid_argument);
    CHECK_THROWS_AS(fd_sensitivity(trade, market, 0.0, setup, {6, 1e-4}, counter),
                    std::invalid_argument);
    CHECK_THROWS_AS(black_price(-1.0, 100.0, 0.2, 1.0, true), std::invalid_argument);
    CHECK_THROWS_AS(hagan_lognormal_vol(0.04, 0.04, 1.0, 0.0, 0.5, 0.0, 0.3),
                    std::invalid_argument);

    // A swaption cannot be priced without smile parameters or vol quotes.
    const Trade opt{payer_swaption(0.04)};
    CHECK_THROWS_AS(price(opt, market, 0.0, setup, counter), std::invalid_argument);
}
