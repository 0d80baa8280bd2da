#include "tssdn/switching/credit_shaper.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "tssdn/sim/error.hpp"

namespace tssdn::switching {

namespace {

__extension__ using i128 = __int128;  // credit * time products overflow int64

std::int64_t saturate(i128 v) {
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  if (v > hi) return hi;
  if (v < lo) return lo;
  return static_cast<std::int64_t>(v);
}

}  // namespace

CreditState CreditState::make(std::int64_t idle_slope_bps, std::int64_t port_rate_bps, sim::SimTime now) {
  if (idle_slope_bps <= 0 || idle_slope_bps > port_rate_bps) {
    throw std::invalid_argument("idle slope must lie in (0, port rate]");
  }
  return CreditState{0, idle_slope_bps, idle_slope_bps - port_rate_bps, now};
}

void update_credit(CreditState& cs, sim::SimTime now, bool transmitting, bool queue_nonempty) {
  if (now < cs.last_update) throw ModelError("credit update moves backwards in time");
  const i128 dt = (now - cs.last_update).count();
  const i128 credit = cs.credit_nbits;
  if (transmitting) {
    cs.credit_nbits = saturate(credit + cs.send_slope * dt);
  } else if (queue_nonempty) {
    cs.credit_nbits = saturate(credit + cs.idle_slope * dt);
  } else if (credit < 0) {
    cs.credit_nbits = saturate(std::min<i128>(0, credit + cs.idle_slope * dt));
  } else {
    cs.credit_nbits = 0;
  }
  cs.last_update = now;
}

sim::SimTime time_to_zero_credit(const CreditState& cs) {
  if (cs.credit_nbits >= 0) return {};
  const std::int64_t deficit = -cs.credit_nbits;
  return sim::SimTime::ns((deficit + cs.idle_slope - 1) / cs.idle_slope);
}

}  // namespace tssdn::switching
