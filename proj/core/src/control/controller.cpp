#include "tssdn/control/controller.hpp"

#include "tssdn/sim/error.hpp"
#include "tssdn/switching/tssdn_switch.hpp"

namespace tssdn::control {

using metrics::TraceKind;

Controller::Controller(sim::Simulator& sim, ControllerConfig config, metrics::MetricsSink* sink)
    : sim::Node(config.name), sim_(sim), config_(std::move(config)), sink_(sink) {}

void Controller::receive(sim::PortId, frames::EthernetFrame) {
  throw ModelError("controller has no dataplane ports");
}

std::size_t Controller::add_channel(ControlChannel* channel) {
  channels_.push_back(channel);
  ready_.push_back(false);
  port_counts_.push_back(0);
  return channels_.size() - 1;
}

void Controller::bootstrap() {
  for (std::size_t sw = 0; sw < channels_.size(); ++sw) send(sw, Hello{});
}

void Controller::send(std::size_t sw, ControlBody body) {
  ControlChannel* ch = channels_.at(sw);
  ch->send_to_switch({ch->next_xid(), std::move(body)});
}

void Controller::install(std::size_t sw, switching::FlowMatch match, int priority,
                         std::vector<switching::FlowAction> actions) {
  ++counters_.flow_mods;
  send(sw, FlowMod{FlowModAdd{std::move(match), priority, std::move(actions)}});
}

void Controller::warn(const std::string& message) {
  if (sink_) sink_->warn(sim_.now(), name(), message);
}

const ControllerStream* Controller::stream(const srp::StreamId& id) const {
  auto it = streams_.find(id);
  return it == streams_.end() ? nullptr : &it->second;
}

std::optional<PortId> Controller::learned_port(std::size_t sw, const frames::MacAddress& mac) const {
  auto it = mac_table_.find({sw, mac});
  if (it == mac_table_.end()) return std::nullopt;
  return it->second;
}

void Controller::on_control(std::size_t sw, ControlMessage msg) {
  if (const auto* features = msg.as<FeaturesReply>()) {
    port_counts_.at(sw) = features->port_count;
    send(sw, FlowMod{FlowModMissAction{switching::MissAction::ToController}});
    ready_.at(sw) = true;
  } else if (const auto* fwd = msg.as<ForwardSrp>()) {
    on_forward_srp(sw, *fwd);
  } else if (const auto* pin = msg.as<PacketIn>()) {
    on_packet_in(sw, *pin);
  } else {
    throw ModelError("controller received unexpected " + kind_name(msg));
  }
}

void Controller::on_forward_srp(std::size_t sw, const ForwardSrp& msg) {
  const auto& desc = msg.srp.stream;
  const auto key = switching::stream_key(desc.dst_group, desc.vlan.vid);
  const auto& sw_name = channels_.at(sw)->switch_name();

  if (msg.srp.kind == frames::SrpKind::TalkerAdvertise) {
    auto& st = streams_[desc.id];
    auto it = st.switches.find(sw);
    if (it != st.switches.end()) {
      auto& at = it->second;
      if (at.talker_port == msg.in_port && st.descriptor == desc && sim_.now() - at.last_advertise < desc.interval) {
        ++counters_.srp_suppressed;
        return;
      }
      if (at.talker_port != msg.in_port) {
        ++counters_.topology_changes;
        warn("talker of " + desc.id.to_string() + " moved on " + sw_name + " from port " +
             std::to_string(at.talker_port) + " to " + std::to_string(msg.in_port));
        at.listener_ports.erase(msg.in_port);
      }
      at.talker_port = msg.in_port;
      at.last_advertise = sim_.now();
    } else {
      st.switches.emplace(sw, ControllerStream::AtSwitch{msg.in_port, {}, sim_.now()});
    }
    st.descriptor = desc;
    if (sink_) sink_->trace(sim_.now(), name(), TraceKind::ControllerSrUpdate, 0, key, sw_name + " talker " + std::to_string(msg.in_port));
    ++counters_.srp_forwarded;
    send(sw, msg);
    return;
  }

  auto it = streams_.find(desc.id);
  if (it == streams_.end() || !it->second.switches.contains(sw)) {
    ++counters_.srp_dropped;
    warn("listener ready for unknown stream " + desc.id.to_string() + " on " + sw_name);
    return;
  }
  auto& st = it->second;
  auto& at = st.switches.at(sw);
  at.listener_ports.insert(msg.in_port);
  if (sink_) sink_->trace(sim_.now(), name(), TraceKind::ControllerSrUpdate, 0, key, sw_name + " listener " + std::to_string(msg.in_port));

  switching::FlowMatch match;
  match.in_port = at.talker_port;
  match.eth_dst = st.descriptor.dst_group;
  match.eth_src = st.descriptor.id.talker;
  match.vlan_vid = st.descriptor.vlan.vid;
  match.vlan_pcp = st.descriptor.vlan.pcp;
  std::vector<PortId> outs(at.listener_ports.begin(), at.listener_ports.end());
  // rule first: the channel is FIFO, so it is installed before the listener
  // ready leaves the switch
  install(sw, match, config_.stream_priority, {switching::output_to(std::move(outs))});
  ++counters_.srp_forwarded;
  send(sw, msg);
}

void Controller::on_packet_in(std::size_t sw, const PacketIn& msg) {
  ++counters_.packet_in;
  const auto& frame = msg.frame;
  if (!frame.src.is_multicast()) mac_table_[{sw, frame.src}] = msg.in_port;

  if (frame.is<frames::StreamData>()) {
    // stream traffic is only ever forwarded by rules from the SR manager
    ++counters_.stream_packet_in;
    warn("stream frame missed the flow table on " + channels_.at(sw)->switch_name() + " port " +
         std::to_string(msg.in_port));
    return;
  }

  if (frame.dst.is_multicast()) {
    ++counters_.packet_out;
    send(sw, PacketOut{frame, msg.in_port, Flood{}});
    return;
  }

  const auto dst_port = learned_port(sw, frame.dst);
  if (!dst_port) {
    ++counters_.packet_out;
    send(sw, PacketOut{frame, msg.in_port, Flood{}});
    return;
  }
  if (*dst_port == msg.in_port) return;

  switching::FlowMatch match;
  match.eth_dst = frame.dst;
  match.eth_src = frame.src;
  match.in_port = msg.in_port;
  install(sw, match, config_.reactive_priority, {switching::output_to({*dst_port})});
  ++counters_.packet_out;
  send(sw, PacketOut{frame, msg.in_port, std::vector<PortId>{*dst_port}});
}

}  // namespace tssdn::control
