#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "tssdn/frames/mac_address.hpp"
#include "tssdn/sim/time.hpp"
#include "tssdn/srp/stream_id.hpp"

namespace tssdn::frames {

inline constexpr std::uint32_t kMinFrameBytes = 64;
inline constexpr std::uint32_t kMaxFrameBytes = 1522;
/// Preamble (7) + SFD (1) + inter-frame gap (12).
inline constexpr std::uint32_t kWireOverheadBytes = 20;

struct VlanTag {
  std::uint16_t vid = 0;
  std::uint8_t pcp = 0;

  /// Throws std::invalid_argument unless vid <= 4095 and pcp <= 7.
  static VlanTag make(unsigned vid, unsigned pcp);

  auto operator<=>(const VlanTag&) const = default;
};

/// Everything a talker announces about its stream.
struct StreamDescriptor {
  srp::StreamId id;
  MacAddress dst_group;
  VlanTag vlan;
  std::uint32_t max_frame_bytes = 0;
  sim::SimTime interval;
  srp::SrClassName sr_class = srp::SrClassName::ClassA;

  bool operator==(const StreamDescriptor&) const = default;
};

enum class SrpKind : std::uint8_t { TalkerAdvertise, ListenerReady };

struct SrpMessage {
  SrpKind kind = SrpKind::TalkerAdvertise;
  StreamDescriptor stream;

  bool operator==(const SrpMessage&) const = default;
};

enum class ArpKind : std::uint8_t { Request, Reply };

struct ArpMessage {
  ArpKind kind = ArpKind::Request;
  ProtocolAddress asked;
  std::optional<MacAddress> answer;  // reply only
};

struct UdpDatagram {
  std::uint16_t flow = 0;  // metrics flow handle
  ProtocolAddress dst;
  std::uint64_t seq = 0;
  sim::SimTime sent_at;
};

struct StreamData {
  srp::StreamId stream;
  std::uint16_t flow = 0;
  std::uint64_t seq = 0;
  sim::SimTime sent_at;
};

using Payload = std::variant<SrpMessage, ArpMessage, UdpDatagram, StreamData>;

/// MSRP destination address (nearest-bridge group).
inline constexpr MacAddress kSrpGroup{{0x01, 0x80, 0xC2, 0x00, 0x00, 0x0E}};

struct EthernetFrame {
  MacAddress src;
  MacAddress dst;
  std::optional<VlanTag> vlan;
  Payload payload;
  std::uint32_t frame_bytes = kMinFrameBytes;
  std::uint64_t uid = 0;  // assigned by the network when the frame is created

  /// Pads to 64 bytes; throws std::invalid_argument above 1522 bytes or when a
  /// StreamData payload lacks a VLAN tag.
  static EthernetFrame make(MacAddress src, MacAddress dst, std::optional<VlanTag> vlan, Payload payload,
                            std::uint32_t frame_bytes);

  std::uint8_t pcp() const { return vlan ? vlan->pcp : 0; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&payload);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(payload);
  }
};

inline std::uint32_t wire_size(const EthernetFrame& frame) { return frame.frame_bytes + kWireOverheadBytes; }
inline std::uint64_t wire_bits(const EthernetFrame& frame) { return std::uint64_t{wire_size(frame)} * 8; }

std::string payload_name(const EthernetFrame& frame);

}  // namespace tssdn::frames
