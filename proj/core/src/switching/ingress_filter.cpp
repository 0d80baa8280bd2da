#include "tssdn/switching/ingress_filter.hpp"

namespace tssdn::switching {

void IngressFilter::expect(const frames::MacAddress& group, std::uint16_t vid, sim::PortId port) {
  auto& rule = rules_[{group, vid}];
  rule.expected_in_port = port;
}

bool IngressFilter::admit(const frames::EthernetFrame& frame, sim::PortId in_port) {
  if (!frame.is<frames::StreamData>() || !frame.vlan) return true;
  auto it = rules_.find({frame.dst, frame.vlan->vid});
  if (it == rules_.end() || it->second.expected_in_port == in_port) return true;
  ++it->second.drops;
  ++total_drops_;
  return false;
}

std::uint64_t IngressFilter::drops(const frames::MacAddress& group, std::uint16_t vid) const {
  auto it = rules_.find({group, vid});
  return it == rules_.end() ? 0 : it->second.drops;
}

}  // namespace tssdn::switching
