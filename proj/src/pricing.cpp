#include "chebdim/pricing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chebdim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Fixed-leg payment schedule of a swap running from inception to maturity:
// whole-year coupons plus a final stub when the maturity is fractional.
struct Coupon {
    double time;
    double accrual;
};

std::vector<Coupon> fixed_schedule(double maturity) {
    std::vector<Coupon> out;
    const int whole = static_cast<int>(std::floor(maturity));
    for (int i = 1; i <= whole; ++i) out.push_back({static_cast<double>(i), 1.0});
    if (maturity > whole) out.push_back({maturity, maturity - whole});
    return out;
}

double swap_pv(const SwapTrade& swap, const ParCurve& curve, double t) {
    if (t >= swap.maturity) return 0.0;
    double annuity = 0.0;
    for (const Coupon& c : fixed_schedule(swap.maturity))
        if (c.time > t) annuity += c.accrual * curve.discount(c.time - t);
    const double float_leg = 1.0 - curve.discount(swap.maturity - t);
    const double payer = swap.notional * (float_leg - swap.fixed_rate * annuity);
    return swap.direction == PayReceive::payer ? payer : -payer;
}

double vol_at_expiry(const MarketState& market, const PillarConfig& pillars, double expiry) {
    const Eigen::VectorXd& vols = market.vols;
    const std::vector<double>& xs = pillars.vol_expiries;
    if (vols.size() == 1) return vols[0];
    if (expiry <= xs.front()) return vols[0];
    if (expiry >= xs.back()) return vols[vols.size() - 1];
    std::size_t i = 1;
    while (xs[i] < expiry) ++i;
    const double w = (expiry - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return vols[static_cast<Eigen::Index>(i - 1)] * (1.0 - w) +
           vols[static_cast<Eigen::Index>(i)] * w;
}

double swaption_pv(const SwaptionTrade& opt, const ParCurve& curve, const MarketState& market,
                   const PillarConfig& pillars, const std::optional<SabrParams>& smile, double t) {
    if (t > opt.expiry) return 0.0;
    const double tau_e = opt.expiry - t;
    const int tenor = static_cast<int>(opt.underlying_tenor);

    double annuity = 0.0;
    for (int i = 1; i <= tenor; ++i) annuity += curve.discount(tau_e + i);
    const double forward =
        (curve.discount(tau_e) - curve.discount(tau_e + tenor)) / annuity;

    const bool is_call = opt.direction == PayReceive::payer;
    double undiscounted;
    if (tau_e <= 0.0) {
        const double intrinsic = is_call ? forward - opt.strike : opt.strike - forward;
        undiscounted = std::max(intrinsic, 0.0);
    } else {
        require(smile.has_value(), "price: swaption without smile parameters");
        require(market.vols.size() > 0, "price: swaption requires at least one vol pillar");
        const double alpha = vol_at_expiry(market, pillars, tau_e);
        const double vol = hagan_lognormal_vol(forward, opt.strike, tau_e, alpha, smile->beta,
                                               smile->correlation, smile->vol_of_vol);
        undiscounted = black_price(forward, opt.strike, vol, tau_e, is_call);
    }
    return opt.notional * annuity * undiscounted;
}

}  // namespace

ParCurve::ParCurve(const Eigen::VectorXd& par_rates, const std::vector<double>& tenors) {
    require(par_rates.size() == static_cast<Eigen::Index>(tenors.size()),
            "ParCurve: rate/tenor size mismatch");
    require(!tenors.empty(), "ParCurve: no pillars");
    const int max_tenor = static_cast<int>(tenors.back());

    // Par rates at every whole-year tenor, linear between pillars, flat ends.
    std::vector<double> par(static_cast<std::size_t>(max_tenor) + 1, 0.0);
    std::size_t k = 0;
    for (int i = 1; i <= max_tenor; ++i) {
        const double x = static_cast<double>(i);
        while (k + 1 < tenors.size() && tenors[k + 1] < x) ++k;
        double value;
        if (x <= tenors.front()) {
            value = par_rates[0];
        } else if (x >= tenors.back()) {
            value = par_rates[par_rates.size() - 1];
        } else {
            const double w = (x - tenors[k]) / (tenors[k + 1] - tenors[k]);
            value = par_rates[static_cast<Eigen::Index>(k)] * (1.0 - w) +
                    par_rates[static_cast<Eigen::Index>(k + 1)] * w;
        }
        par[static_cast<std::size_t>(i)] = value;
    }

    discounts_.assign(static_cast<std::size_t>(max_tenor) + 1, 1.0);
    double annuity = 0.0;
    for (int i = 1; i <= max_tenor; ++i) {
        const double s = par[static_cast<std::size_t>(i)];
        const double p = (1.0 - s * annuity) / (1.0 + s);
        if (!(p > 0.0))
            throw std::runtime_error("ParCurve: bootstrap produced non-positive discount at " +
                                     std::to_string(i) + "y");
        discounts_[static_cast<std::size_t>(i)] = p;
        annuity += p;
    }
    log_discounts_.resize(discounts_.size());
    for (std::size_t i = 0; i < discounts_.size(); ++i) log_discounts_[i] = std::log(discounts_[i]);
}

double ParCurve::discount(double tau) const {
    if (tau <= 0.0) return 1.0;
    const int max = max_tenor();
    const double last_fwd = max > 1 ? log_discounts_[static_cast<std::size_t>(max)] -
                                          log_discounts_[static_cast<std::size_t>(max - 1)]
                                    : log_discounts_[1];
    if (tau >= max)  // flat-forward extrapolation; trades are validated to stay inside
        return std::exp(log_discounts_[static_cast<std::size_t>(max)] + (tau - max) * last_fwd);
    const int lo = static_cast<int>(std::floor(tau));
    const double w = tau - lo;
    const double lp = log_discounts_[static_cast<std::size_t>(lo)] * (1.0 - w) +
                      log_discounts_[static_cast<std::size_t>(lo + 1)] * w;
    return std::exp(lp);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double black_price(double forward, double strike, double vol, double expiry, bool is_call) {
    require(forward > 0.0 && strike > 0.0, "black_price: forward and strike must be > 0");
    const double stddev = vol * std::sqrt(expiry);
    if (stddev <= 0.0) {
        const double intrinsic = is_call ? forward - strike : strike - forward;
        return std::max(intrinsic, 0.0);
    }
    const double d1 = (std::log(forward / strike) + 0.5 * stddev * stddev) / stddev;
    const double d2 = d1 - stddev;
    if (is_call) return forward * norm_cdf(d1) - strike * norm_cdf(d2);
    return strike * norm_cdf(-d2) - forward * norm_cdf(-d1);
}

double hagan_lognormal_vol(double forward, double strike, double expiry, double alpha, double beta,
                           double rho, double nu) {
    require(forward > 0.0 && strike > 0.0, "hagan_lognormal_vol: forward and strike must be > 0");
    require(alpha > 0.0, "hagan_lognormal_vol: alpha must be > 0");
    const double one_m_beta = 1.0 - beta;

    if (std::abs(forward - strike) < 1e-12 * std::max(forward, strike)) {
        const double f_pow = std::pow(forward, one_m_beta);
        const double term = one_m_beta * one_m_beta / 24.0 * alpha * alpha / (f_pow * f_pow) +
                            rho * beta * nu * alpha / (4.0 * f_pow) +
                            (2.0 - 3.0 * rho * rho) / 24.0 * nu * nu;
        return alpha / f_pow * (1.0 + term * expiry);
    }

    const double log_fk = std::log(forward / strike);
    const double fk_pow = std::pow(forward * strike, 0.5 * one_m_beta);
    const double z = nu / alpha * fk_pow * log_fk;
    double z_over_x;
    if (std::abs(z) < 1e-6) {
        z_over_x = 1.0 - 0.5 * rho * z + (2.0 - 3.0 * rho * rho) / 12.0 * z * z;
    } else {
        const double x = std::log((std::sqrt(1.0 - 2.0 * rho * z + z * z) + z - rho) / (1.0 - rho));
        z_over_x = z / x;
    }
    const double denom = fk_pow * (1.0 + one_m_beta * one_m_beta / 24.0 * log_fk * log_fk +
                                   std::pow(one_m_beta, 4) / 1920.0 * std::pow(log_fk, 4));
    const double drift = one_m_beta * one_m_beta / 24.0 * alpha * alpha / (fk_pow * fk_pow) +
                         rho * beta * nu * alpha / (4.0 * fk_pow) +
                         (2.0 - 3.0 * rho * rho) / 24.0 * nu * nu;
    return alpha / denom * z_over_x * (1.0 + drift * expiry);
}

double trade_horizon(const Trade& trade) {
    if (const auto* swap = std::get_if<SwapTrade>(&trade)) return swap->maturity;
    return std::get<SwaptionTrade>(trade).expiry;
}

bool is_expired(const Trade& trade, double t) {
    if (const auto* swap = std::get_if<SwapTrade>(&trade)) return t >= swap->maturity;
    return t > std::get<SwaptionTrade>(trade).expiry;
}

const char* to_string(PayReceive dir) { return dir == PayReceive::payer ? "payer" : "receiver"; }

const char* to_string(Moneyness m) {
    switch (m) {
        case Moneyness::atm: return "atm";
        case Moneyness::itm: return "itm";
        case Moneyness::otm: return "otm";
        default: return "custom";
    }
}

double price(const Trade& trade, const MarketState& market, double t, const PricerSetup& setup,
             CallCounter& counter, bool* expired) {
    counter.increment();
    if (expired) *expired = is_expired(trade, t);
    if (is_expired(trade, t)) return 0.0;
    ParCurve curve(market.swap_rates, setup.pillars.swap_tenors);
    if (const auto* swap = std::get_if<SwapTrade>(&trade)) return swap_pv(*swap, curve, t);
    return swaption_pv(std::get<SwaptionTrade>(trade), curve, market, setup.pillars, setup.smile,
                       t);
}

double fd_sensitivity(const Trade& trade, const MarketState& market, double t,
                      const PricerSetup& setup, const SensitivityRequest& request,
                      CallCounter& counter) {
    require(request.bump_size > 0.0, "fd_sensitivity: bump size must be > 0");
    require(request.factor_index >= 0 && request.factor_index < market.factor_count(),
            "fd_sensitivity: factor index " + std::to_string(request.factor_index) +
                " out of range");
    MarketState up = market;
    up.set_factor(request.factor_index, market.factor(request.factor_index) + request.bump_size);
    MarketState down = market;
    down.set_factor(request.factor_index, market.factor(request.factor_index) - request.bump_size);
    const double pv_up = price(trade, up, t, setup, counter);
    const double pv_down = price(trade, down, t, setup, counter);
    return (pv_up - pv_down) / (2.0 * request.bump_size);
}

Eigen::VectorXd all_sensitivities(const Trade& trade, const MarketState& market, double t,
                                  const PricerSetup& setup, const BumpConfig& bumps,
                                  CallCounter& counter) {
    Eigen::VectorXd out(market.factor_count());
    for (int i = 0; i < market.factor_count(); ++i)
        out[i] = fd_sensitivity(trade, market, t, setup,
                                {i, bumps.bump_for(setup.pillars, i)}, counter);
    return out;
}

}  // namespace chebdim
