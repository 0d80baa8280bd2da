#include "tssdn/switching/tssdn_switch.hpp"

#include "tssdn/sim/error.hpp"

namespace tssdn::switching {

using metrics::TraceKind;

std::string stream_key(const frames::MacAddress& group, std::uint16_t vid) {
  return group.to_string() + "@" + std::to_string(vid);
}

TssdnSwitch::TssdnSwitch(sim::Simulator& sim, SwitchConfig config, metrics::MetricsSink* sink)
    : sim::Node(config.name), sim_(sim), config_(std::move(config)), sink_(sink) {
  if (config_.ports == 0) throw std::invalid_argument("switch " + config_.name + " needs at least one port");
  counters_.name = config_.name;
}

void TssdnSwitch::on_added() {
  ports_.clear();
  budgets_.clear();
  for (sim::PortId p = 0; p < config_.ports; ++p) {
    auto wire = [this, p](frames::EthernetFrame f, sim::SimTime start) {
      network().transmit_from(id(), p, std::move(f), start);
    };
    ports_.push_back(std::make_unique<EgressPort>(sim_, id(), sim::kDefaultLinkRate, wire, config_.queue_capacity));
    if (config_.shaper_disabled) ports_.back()->set_mode(EgressMode::Fifo);
    budgets_.emplace_back(p, sim::kDefaultLinkRate, config_.admission_fraction);
  }
}

void TssdnSwitch::set_port_rate(sim::PortId port, std::int64_t rate_bps) {
  ports_.at(port)->set_rate(rate_bps);
  budgets_.at(port) = srp::PortBudget(port, rate_bps, config_.admission_fraction);
}

frames::MacAddress TssdnSwitch::mac() const {
  const auto v = id();
  return frames::MacAddress{{0x02, 0x53, 0x57, static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
                             static_cast<std::uint8_t>(v)}};
}

void TssdnSwitch::trace(TraceKind kind, std::uint64_t uid, std::string stream, std::string detail) {
  if (sink_) sink_->trace(sim_.now(), name(), kind, uid, std::move(stream), std::move(detail));
}

void TssdnSwitch::receive(sim::PortId port, frames::EthernetFrame frame) {
  if (const auto* srp = frame.as<frames::SrpMessage>()) {
    if (!config_.sdn) {
      update_sr_table(*srp, port);
    } else if (channel_ != nullptr) {
      ++counters_.srp_to_controller;
      channel_->send_to_controller({channel_->next_xid(), control::ForwardSrp{*srp, port}});
    } else {
      ++counters_.srp_dropped;
    }
    return;
  }
  ingress(std::move(frame), port);
}

void TssdnSwitch::ingress(frames::EthernetFrame frame, sim::PortId in_port) {
  if (!filter_.admit(frame, in_port)) {
    ++counters_.dropped_filter;
    trace(TraceKind::FilterDrop, frame.uid, frame.vlan ? stream_key(frame.dst, frame.vlan->vid) : "",
          "in_port " + std::to_string(in_port));
    if (sink_) sink_->warn(sim_.now(), name(), "stream frame on unexpected port " + std::to_string(in_port));
    return;
  }
  if (tracing()) trace(TraceKind::FilterCheck, frame.uid);

  if (tracing()) trace(TraceKind::TableLookup, frame.uid);
  if (!config_.sdn) {
    builtin_forward(frame, in_port);
    return;
  }
  if (const FlowEntry* entry = table_.lookup(frame, in_port)) {
    execute(*entry, frame, in_port);
    return;
  }
  if (frame.is<frames::StreamData>()) ++counters_.stream_miss;
  if (table_.miss_action() == MissAction::ToController && channel_ != nullptr) {
    packet_in(std::move(frame), in_port, control::PacketInReason::NoMatch);
  } else {
    ++counters_.dropped_miss;
  }
}

void TssdnSwitch::execute(const FlowEntry& entry, const frames::EthernetFrame& frame, sim::PortId in_port) {
  bool forwarded = false;
  for (const auto& action : entry.actions) {
    if (const auto* out = std::get_if<Output>(&action)) {
      for (auto p : out->ports) {
        if (p == in_port) continue;
        output(frame, p);
        forwarded = true;
      }
    } else if (std::holds_alternative<ToController>(action)) {
      packet_in(frame, in_port, control::PacketInReason::Action);
    } else {
      ++counters_.dropped_action;
    }
  }
  if (forwarded) ++counters_.forwarded;
}

void TssdnSwitch::builtin_forward(const frames::EthernetFrame& frame, sim::PortId in_port) {
  if (!frame.src.is_multicast()) mac_table_[frame.src] = in_port;

  if (frame.vlan) {
    if (const auto* reg = sr_.find_by_group(frame.dst, frame.vlan->vid)) {
      bool forwarded = false;
      for (auto p : reg->listener_ports) {
        if (p == in_port) continue;
        output(frame, p);
        forwarded = true;
      }
      if (forwarded) {
        ++counters_.forwarded;
      } else {
        ++counters_.dropped_no_listener;
      }
      return;
    }
  }
  if (frame.dst.is_multicast()) {
    flood(frame, in_port);
    ++counters_.forwarded;
    return;
  }
  auto it = mac_table_.find(frame.dst);
  if (it == mac_table_.end()) {
    flood(frame, in_port);
    ++counters_.forwarded;
  } else if (it->second != in_port) {
    output(frame, it->second);
    ++counters_.forwarded;
  }
}

void TssdnSwitch::output(frames::EthernetFrame frame, sim::PortId port) {
  const auto uid = frame.uid;
  if (!ports_.at(port)->enqueue(std::move(frame))) return;  // counted by the port
  if (tracing()) trace(TraceKind::Enqueue, uid, {}, std::to_string(port));
}

void TssdnSwitch::flood(const frames::EthernetFrame& frame, sim::PortId except) {
  for (sim::PortId p = 0; p < config_.ports; ++p) {
    if (p != except && network().attachment(id(), p)) output(frame, p);
  }
}

void TssdnSwitch::packet_in(frames::EthernetFrame frame, sim::PortId in_port, control::PacketInReason reason) {
  ++counters_.sent_to_controller;
  trace(TraceKind::MissToController, frame.uid, {}, frames::payload_name(frame));
  channel_->send_to_controller({channel_->next_xid(), control::PacketIn{std::move(frame), in_port, reason}});
}

void TssdnSwitch::send_srp(const frames::SrpMessage& srp, sim::PortId port) {
  auto frame = frames::EthernetFrame::make(mac(), frames::kSrpGroup, std::nullopt, srp, frames::kMinFrameBytes);
  frame.uid = network().next_frame_uid();
  trace(TraceKind::SrpSent, frame.uid, stream_key(srp.stream.dst_group, srp.stream.vlan.vid),
        (srp.kind == frames::SrpKind::TalkerAdvertise ? "talker_advertise port " : "listener_ready port ") +
            std::to_string(port));
  output(std::move(frame), port);
}

void TssdnSwitch::update_sr_table(const frames::SrpMessage& srp, sim::PortId in_port) {
  const auto& desc = srp.stream;
  const auto key = stream_key(desc.dst_group, desc.vlan.vid);

  if (srp.kind == frames::SrpKind::TalkerAdvertise) {
    const auto update = sr_.register_talker(desc, in_port);
    filter_.expect(desc.dst_group, desc.vlan.vid, in_port);
    trace(TraceKind::SwitchSrUpdate, 0, key, "talker " + std::to_string(in_port));
    // standalone bridges stop re-flooding an unchanged advertise; in SDN mode
    // the controller already suppressed duplicates
    if (!config_.sdn && update == SrTable::TalkerUpdate::Unchanged) return;
    for (sim::PortId p = 0; p < config_.ports; ++p) {
      if (p != in_port && network().attachment(id(), p)) send_srp(srp, p);
    }
    return;
  }

  const StreamRegistration* reg = sr_.find(desc.id);
  if (reg == nullptr) {
    ++counters_.srp_dropped;
    if (sink_) sink_->warn(sim_.now(), name(), "listener ready for unknown stream " + desc.id.to_string());
    return;
  }
  const auto reservation = srp::make_reservation(reg->descriptor);
  const auto decision = srp::admit(budgets_.at(in_port), reservation);
  if (!decision.admitted) {
    ++counters_.admission_rejected;
    if (sink_) {
      sink_->warn(sim_.now(), name(),
                  "reservation for " + desc.id.to_string() + " rejected on port " + std::to_string(decision.port));
    }
    return;
  }
  ports_.at(in_port)->set_idle_slope(reservation.pcp, decision.idle_slope_bps);
  sr_.add_listener(desc.id, in_port);
  trace(TraceKind::SwitchSrUpdate, 0, key, "listener " + std::to_string(in_port));
  send_srp(srp, reg->talker_port);
}

void TssdnSwitch::on_control(std::size_t, control::ControlMessage msg) {
  using namespace control;
  if (std::holds_alternative<Hello>(msg.body)) {
    channel_->send_to_controller({msg.xid, FeaturesReply{config_.ports}});
  } else if (const auto* mod = msg.as<FlowMod>()) {
    if (const auto* add = std::get_if<FlowModAdd>(&mod->body)) {
      table_.install(add->match, add->priority, add->actions);
      flow_mods_.push_back({sim_.now(), add->match, add->priority, add->actions});
      std::string key;
      if (add->match.eth_dst && add->match.eth_dst->is_multicast() && add->match.vlan_vid) {
        key = stream_key(*add->match.eth_dst, *add->match.vlan_vid);
      }
      trace(TraceKind::FlowModApplied, 0, key, add->match.to_string());
    } else {
      table_.set_miss_action(std::get<FlowModMissAction>(mod->body).action);
      trace(TraceKind::MissActionApplied, 0);
    }
  } else if (const auto* out = msg.as<PacketOut>()) {
    if (std::holds_alternative<Flood>(out->out)) {
      flood(out->frame, out->in_port);
    } else {
      for (auto p : std::get<std::vector<sim::PortId>>(out->out)) output(out->frame, p);
    }
    ++counters_.forwarded;
  } else if (const auto* fwd = msg.as<ForwardSrp>()) {
    update_sr_table(fwd->srp, fwd->in_port);
  } else {
    throw ModelError("switch " + name() + " received unexpected " + kind_name(msg));
  }
}

SwitchCounters TssdnSwitch::counters() const {
  SwitchCounters c = counters_;
  c.dropped_overflow = 0;
  c.max_queue_depth.clear();
  for (const auto& p : ports_) {
    c.dropped_overflow += p->overflow_drops();
    std::array<std::size_t, kNumQueues> depth{};
    for (std::size_t q = 0; q < kNumQueues; ++q) depth[q] = p->max_depth(static_cast<std::uint8_t>(q));
    c.max_queue_depth.push_back(depth);
  }
  return c;
}

}  // namespace tssdn::switching
