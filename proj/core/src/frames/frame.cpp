#include "tssdn/frames/frame.hpp"

#include <algorithm>
#include <stdexcept>

namespace tssdn::frames {

VlanTag VlanTag::make(unsigned vid, unsigned pcp) {
  if (vid >= 4095) throw std::invalid_argument("VLAN id out of range (4095 is reserved): " + std::to_string(vid));
  if (pcp > 7) throw std::invalid_argument("PCP out of range: " + std::to_string(pcp));
  return VlanTag{static_cast<std::uint16_t>(vid), static_cast<std::uint8_t>(pcp)};
}

EthernetFrame EthernetFrame::make(MacAddress src, MacAddress dst, std::optional<VlanTag> vlan, Payload payload,
                                  std::uint32_t frame_bytes) {
  if (frame_bytes > kMaxFrameBytes) {
    throw std::invalid_argument("frame of " + std::to_string(frame_bytes) + " bytes exceeds 1522");
  }
  if (std::holds_alternative<StreamData>(payload) && !vlan) {
    throw std::invalid_argument("stream data frames must carry a VLAN tag");
  }
  EthernetFrame f;
  f.src = src;
  f.dst = dst;
  f.vlan = vlan;
  f.payload = std::move(payload);
  f.frame_bytes = std::max(frame_bytes, kMinFrameBytes);
  return f;
}

std::string payload_name(const EthernetFrame& frame) {
  struct Visitor {
    std::string operator()(const SrpMessage& m) const {
      return m.kind == SrpKind::TalkerAdvertise ? "srp-talker-advertise" : "srp-listener-ready";
    }
    std::string operator()(const ArpMessage& m) const {
      return m.kind == ArpKind::Request ? "arp-request" : "arp-reply";
    }
    std::string operator()(const UdpDatagram&) const { return "udp"; }
    std::string operator()(const StreamData&) const { return "stream-data"; }
  };
  return std::visit(Visitor{}, frame.payload);
}

}  // namespace tssdn::frames
