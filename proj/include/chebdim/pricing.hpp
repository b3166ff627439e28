#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>

#include "chebdim/rfem.hpp"
#include "chebdim/trades.hpp"

namespace chebdim {

/// Thread-safe monotone counter of pricer invocations, attributable to a
/// method by label. Counts are additive across merges.
class CallCounter {
  public:
    explicit CallCounter(std::string label = {}) : label_(std::move(label)) {}
    CallCounter(const CallCounter&) = delete;
    CallCounter& operator=(const CallCounter&) = delete;

    void increment() noexcept { calls_.fetch_add(1, std::memory_order_relaxed); }
    std::uint64_t count() const noexcept { return calls_.load(std::memory_order_relaxed); }
    const std::string& label() const { return label_; }
    void merge(const CallCounter& other) noexcept {
        calls_.fetch_add(other.count(), std::memory_order_relaxed);
    }

  private:
    std::string label_;
    std::atomic<std::uint64_t> calls_{0};
};

/// Static pricing inputs shared by every call: the pillar layout that gives
/// the market state meaning, and the smile parameters for swaption implied
/// vols (unused by swaps).
struct PricerSetup {
    PillarConfig pillars;
    std::optional<SabrParams> smile;
};

/// Central-difference bump sizes in absolute terms.
struct BumpConfig {
    double rate_bump = 1e-4;
    double vol_bump = 1e-3;

    double bump_for(const PillarConfig& pillars, int factor) const {
        return factor < pillars.rate_count() ? rate_bump : vol_bump;
    }
};

struct SensitivityRequest {
    int factor_index = 0;
    double bump_size = 0.0;
};

/// Discount curve bootstrapped from par swap rate pillars: par rates are
/// interpolated linearly across whole-year tenors, annual discount factors
/// are bootstrapped from them, and discounting at fractional times is
/// log-linear between the annual knots.
class ParCurve {
  public:
    ParCurve(const Eigen::VectorXd& par_rates, const std::vector<double>& tenors);

    double discount(double tau) const;
    int max_tenor() const { return static_cast<int>(discounts_.size()) - 1; }

  private:
    std::vector<double> discounts_;  // P(0)=1, P(1), ..., P(max)
    std::vector<double> log_discounts_;
};

double norm_cdf(double x);

/// Undiscounted Black price of a call/put on a lognormal forward.
double black_price(double forward, double strike, double vol, double expiry, bool is_call);

/// Hagan lognormal implied vol for the given smile parameters. Requires
/// forward and strike strictly positive.
double hagan_lognormal_vol(double forward, double strike, double expiry, double alpha, double beta,
                           double rho, double nu);

/// Present value of the trade at observation time t given the market state.
/// Every call increments the counter exactly once. An expired trade prices to
/// 0 and sets *expired when provided.
double price(const Trade& trade, const MarketState& market, double t, const PricerSetup& setup,
             CallCounter& counter, bool* expired = nullptr);

/// Central finite-difference sensitivity to one market factor: exactly two
/// pricer calls, (up - down) / (2 * bump).
double fd_sensitivity(const Trade& trade, const MarketState& market, double t,
                      const PricerSetup& setup, const SensitivityRequest& request,
                      CallCounter& counter);

/// All factor sensitivities at once (2 * factor_count pricer calls), rate
/// pillars first then vol pillars, bump sizes from the bump config.
Eigen::VectorXd all_sensitivities(const Trade& trade, const MarketState& market, double t,
                                  const PricerSetup& setup, const BumpConfig& bumps,
                                  CallCounter& counter);

}  // namespace chebdim
