#include "tssdn/metrics/sink.hpp"

#include <stdexcept>

#include "tssdn/sim/error.hpp"

namespace tssdn::metrics {

const char* to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::FilterCheck: return "filter_check";
    case TraceKind::FilterDrop: return "filter_drop";
    case TraceKind::TableLookup: return "table_lookup";
    case TraceKind::Enqueue: return "enqueue";
    case TraceKind::MissToController: return "miss_to_controller";
    case TraceKind::FlowModApplied: return "flow_mod_applied";
    case TraceKind::MissActionApplied: return "miss_action_applied";
    case TraceKind::SwitchSrUpdate: return "switch_sr_update";
    case TraceKind::ControllerSrUpdate: return "controller_sr_update";
    case TraceKind::SrpSent: return "srp_sent";
    case TraceKind::ListenerReadyAtTalker: return "listener_ready_at_talker";
    case TraceKind::StreamStart: return "stream_start";
    case TraceKind::ArpResolved: return "arp_resolved";
    case TraceKind::UdpStart: return "udp_start";
    case TraceKind::Warning: return "warning";
  }
  return "?";
}

std::uint16_t MetricsSink::register_flow(FlowKind kind, std::string label) {
  if (flows_.size() >= 0xFFFF) throw std::length_error("too many flows");
  flows_.push_back({kind, std::move(label)});
  return static_cast<std::uint16_t>(flows_.size() - 1);
}

void MetricsSink::record_latency(std::uint16_t flow, std::uint64_t seq, sim::SimTime sent, sim::SimTime received) {
  if (received <= sent) throw ModelError("non-positive latency for " + flows_.at(flow).label);
  const auto& f = flows_.at(flow);
  records_.push_back({f.kind, f.label, seq, sent, received});
}

void MetricsSink::trace(sim::SimTime at, std::string node, TraceKind kind, std::uint64_t frame_uid,
                        std::string stream, std::string detail) {
  events_.push_back({at, events_.size(), std::move(node), kind, frame_uid, std::move(stream), std::move(detail)});
}

void MetricsSink::warn(sim::SimTime at, std::string node, std::string message) {
  warnings_.push_back(at.to_string() + " " + node + ": " + message);
  trace(at, std::move(node), TraceKind::Warning, 0, {}, std::move(message));
}

}  // namespace tssdn::metrics
