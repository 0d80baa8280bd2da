#pragma once

#include <cstdint>
#include <string_view>

#include "tssdn/sim/time.hpp"

namespace tssdn::scenario {

/// "125us", "1.5ms", "0" -> integer nanoseconds. The value must be exact in
/// nanoseconds ("0.5ns" is rejected). Throws std::invalid_argument.
sim::SimTime parse_time(std::string_view text);

/// "100Mbps", "1.5Gbps", "64000" (bits/s). Throws std::invalid_argument.
std::int64_t parse_rate(std::string_view text);

}  // namespace tssdn::scenario
