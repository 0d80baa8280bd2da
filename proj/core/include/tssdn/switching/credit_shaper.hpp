#pragma once

#include <cstdint>

#include "tssdn/sim/time.hpp"

namespace tssdn::switching {

/// Credit of one shaped traffic class.
///
/// Credit is kept in nano-bits (bits * 1e9) so that slope[bit/s] * dt[ns]
/// accumulates exactly in integers.
struct CreditState {
  std::int64_t credit_nbits = 0;
  std::int64_t idle_slope = 0;  // bit/s
  std::int64_t send_slope = 0;  // bit/s, idle_slope - port_rate (negative)
  sim::SimTime last_update;

  static CreditState make(std::int64_t idle_slope_bps, std::int64_t port_rate_bps, sim::SimTime now = {});

  double credit_bits() const { return static_cast<double>(credit_nbits) / 1e9; }
};

inline constexpr std::int64_t kNanoBitsPerBit = 1'000'000'000;

/// Advances `cs` to `now`, assuming the class was `transmitting` / had frames
/// waiting (`queue_nonempty`) for the whole interval since last_update:
///   transmitting           -> credit += send_slope * dt
///   waiting, not sending   -> credit += idle_slope * dt (no upper clamp)
///   queue empty            -> negative credit recovers toward 0 at idle_slope,
///                             positive credit is reset to 0
void update_credit(CreditState& cs, sim::SimTime now, bool transmitting, bool queue_nonempty);

/// Time for a negative credit to climb back to zero at idle_slope (0 if already >= 0).
sim::SimTime time_to_zero_credit(const CreditState& cs);

}  // namespace tssdn::switching
