#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tssdn/frames/frame.hpp"
#include "tssdn/sim/simulator.hpp"

namespace tssdn::switching {

using sim::PortId;

/// The five matchable fields (OFPXMT_OFB_IN_PORT, _ETH_DST, _ETH_SRC,
/// _VLAN_VID, _VLAN_PCP). An absent field is a wildcard.
struct FlowMatch {
  std::optional<PortId> in_port;
  std::optional<frames::MacAddress> eth_dst;
  std::optional<frames::MacAddress> eth_src;
  std::optional<std::uint16_t> vlan_vid;
  std::optional<std::uint8_t> vlan_pcp;

  bool matches(const frames::EthernetFrame& frame, PortId port) const;
  std::string to_string() const;

  bool operator==(const FlowMatch&) const = default;
};

struct Output {
  std::vector<PortId> ports;  // sorted, unique
  bool operator==(const Output&) const = default;
};
struct ToController {
  bool operator==(const ToController&) const = default;
};
struct Drop {
  bool operator==(const Drop&) const = default;
};

using FlowAction = std::variant<Output, ToController, Drop>;

Output output_to(std::vector<PortId> ports);

struct FlowEntry {
  FlowMatch match;
  int priority = 0;
  std::vector<FlowAction> actions;
  std::uint64_t install_seq = 0;
};

enum class MissAction : std::uint8_t { Drop, ToController };

/// Match-action table. Lookup returns the highest-priority matching entry,
/// ties broken by earliest installation.
class FlowTable {
 public:
  /// Adds an entry, or replaces the actions of the entry with the same match
  /// and priority (keeping its install_seq). Throws std::invalid_argument on
  /// an empty action list. Returns the stored entry.
  const FlowEntry& install(FlowMatch match, int priority, std::vector<FlowAction> actions);

  const FlowEntry* lookup(const frames::EthernetFrame& frame, PortId in_port) const;

  MissAction miss_action() const { return miss_action_; }
  void set_miss_action(MissAction a) { miss_action_ = a; }

  const std::vector<FlowEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<FlowEntry> entries_;  // kept in (priority desc, install_seq asc) order
  std::uint64_t next_seq_ = 0;
  MissAction miss_action_ = MissAction::Drop;
};

/// Free-function form of FlowTable::lookup; nullptr means Miss.
inline const FlowEntry* match(const FlowTable& table, const frames::EthernetFrame& frame, PortId in_port) {
  return table.lookup(frame, in_port);
}

}  // namespace tssdn::switching
