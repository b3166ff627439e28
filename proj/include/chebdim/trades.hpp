#pragma once

#include <string>
#include <variant>

namespace chebdim {

enum class PayReceive { payer, receiver };

enum class Moneyness { custom, atm, itm, otm };

/// Vanilla fixed-for-float swap, annual fixed coupons, traded at time 0.
struct SwapTrade {
    double notional = 0.0;
    double fixed_rate = 0.0;
    double maturity = 0.0;  // years from inception
    PayReceive direction = PayReceive::payer;
};

/// European swaption on a forward-starting swap. The strike may be resolved
/// from a moneyness label against the time-0 forward when the trade is
/// configured.
struct SwaptionTrade {
    double notional = 0.0;
    double strike = 0.0;
    double expiry = 0.0;            // years from inception
    double underlying_tenor = 0.0;  // whole years
    PayReceive direction = PayReceive::payer;
    Moneyness moneyness = Moneyness::custom;
};

using Trade = std::variant<SwapTrade, SwaptionTrade>;

/// Last time the trade can have value: swap maturity or swaption expiry.
double trade_horizon(const Trade& trade);

/// True once the observation time is past the trade's horizon.
bool is_expired(const Trade& trade, double t);

const char* to_string(PayReceive dir);
const char* to_string(Moneyness m);

}  // namespace chebdim
