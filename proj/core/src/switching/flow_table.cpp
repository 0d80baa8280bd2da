#include "tssdn/switching/flow_table.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tssdn::switching {

bool FlowMatch::matches(const frames::EthernetFrame& frame, PortId port) const {
  if (in_port && *in_port != port) return false;
  if (eth_dst && *eth_dst != frame.dst) return false;
  if (eth_src && *eth_src != frame.src) return false;
  if (vlan_vid && (!frame.vlan || frame.vlan->vid != *vlan_vid)) return false;
  if (vlan_pcp && (!frame.vlan || frame.vlan->pcp != *vlan_pcp)) return false;
  return true;
}

std::string FlowMatch::to_string() const {
  std::ostringstream os;
  const char* sep = "";
  auto field = [&](const char* name, const auto& v) {
    os << sep << name << "=" << v;
    sep = ",";
  };
  if (in_port) field("in_port", *in_port);
  if (eth_dst) field("eth_dst", eth_dst->to_string());
  if (eth_src) field("eth_src", eth_src->to_string());
  if (vlan_vid) field("vlan_vid", *vlan_vid);
  if (vlan_pcp) field("vlan_pcp", unsigned{*vlan_pcp});
  if (*sep == '\0') os << "*";
  return os.str();
}

Output output_to(std::vector<PortId> ports) {
  std::sort(ports.begin(), ports.end());
  ports.erase(std::unique(ports.begin(), ports.end()), ports.end());
  return Output{std::move(ports)};
}

const FlowEntry& FlowTable::install(FlowMatch match, int priority, std::vector<FlowAction> actions) {
  if (actions.empty()) throw std::invalid_argument("flow entry needs at least one action");
  for (auto& e : entries_) {
    if (e.priority == priority && e.match == match) {
      e.actions = std::move(actions);
      return e;
    }
  }
  FlowEntry entry{std::move(match), priority, std::move(actions), next_seq_++};
  auto pos = std::find_if(entries_.begin(), entries_.end(), [&](const FlowEntry& e) { return e.priority < priority; });
  return *entries_.insert(pos, std::move(entry));
}

const FlowEntry* FlowTable::lookup(const frames::EthernetFrame& frame, PortId in_port) const {
  for (const auto& e : entries_) {
    if (e.match.matches(frame, in_port)) return &e;
  }
  return nullptr;
}

}  // namespace tssdn::switching
