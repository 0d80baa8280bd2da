#include "tssdn/control/control_message.hpp"

namespace tssdn::control {

std::string kind_name(const ControlMessage& msg) {
  struct Visitor {
    std::string operator()(const Hello&) const { return "Hello"; }
    std::string operator()(const FeaturesReply&) const { return "FeaturesReply"; }
    std::string operator()(const FlowMod& m) const {
      return std::holds_alternative<FlowModAdd>(m.body) ? "FlowMod" : "FlowMod(miss)";
    }
    std::string operator()(const PacketIn&) const { return "PacketIn"; }
    std::string operator()(const PacketOut&) const { return "PacketOut"; }
    std::string operator()(const ForwardSrp& m) const {
      return m.srp.kind == frames::SrpKind::TalkerAdvertise ? "ForwardSRP(TalkerAdvertise)"
                                                            : "ForwardSRP(ListenerReady)";
    }
  };
  return std::visit(Visitor{}, msg.body);
}

}  // namespace tssdn::control
