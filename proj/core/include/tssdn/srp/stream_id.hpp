#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "tssdn/frames/mac_address.hpp"
#include "tssdn/sim/time.hpp"

namespace tssdn::srp {

/// Streams are identified by their talker plus a 16-bit id unique at that talker.
struct StreamId {
  frames::MacAddress talker;
  std::uint16_t unique_id = 0;

  auto operator<=>(const StreamId&) const = default;
  std::string to_string() const;
};

enum class SrClassName : std::uint8_t { ClassA, ClassB };

struct SrClass {
  SrClassName name = SrClassName::ClassA;
  std::uint8_t pcp = 6;
  sim::SimTime per_hop_max_latency;
  sim::SimTime default_interval;

  bool operator==(const SrClass&) const = default;
};

/// Class A: 250 us worst-case scheduling latency per egress port, 125 us interval.
SrClass class_a();
/// Class B: 250 us interval; per-hop bound scales with the interval (500 us).
SrClass class_b();

SrClass sr_class(SrClassName name);
SrClassName parse_sr_class(std::string_view text);
const char* to_string(SrClassName name);

}  // namespace tssdn::srp
