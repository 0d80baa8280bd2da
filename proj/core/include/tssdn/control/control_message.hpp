#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tssdn/frames/frame.hpp"
#include "tssdn/switching/flow_table.hpp"

namespace tssdn::control {

using sim::PortId;

struct Hello {};

struct FeaturesReply {
  std::size_t port_count = 0;
};

/// Adds or replaces one entry (same match and priority replaces actions).
struct FlowModAdd {
  switching::FlowMatch match;
  int priority = 0;
  std::vector<switching::FlowAction> actions;
};

struct FlowModMissAction {
  switching::MissAction action = switching::MissAction::ToController;
};

struct FlowMod {
  std::variant<FlowModAdd, FlowModMissAction> body;
};

enum class PacketInReason : std::uint8_t { NoMatch, Action };

struct PacketIn {
  frames::EthernetFrame frame;  // carried whole
  PortId in_port = 0;
  PacketInReason reason = PacketInReason::NoMatch;
};

struct Flood {};

struct PacketOut {
  frames::EthernetFrame frame;
  PortId in_port = 0;
  std::variant<std::vector<PortId>, Flood> out;
};

/// SRP message relayed between switch and controller without modification.
struct ForwardSrp {
  frames::SrpMessage srp;
  PortId in_port = 0;
};

using ControlBody = std::variant<Hello, FeaturesReply, FlowMod, PacketIn, PacketOut, ForwardSrp>;

struct ControlMessage {
  std::uint32_t xid = 0;
  ControlBody body;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&body);
  }
};

std::string kind_name(const ControlMessage& msg);

}  // namespace tssdn::control
