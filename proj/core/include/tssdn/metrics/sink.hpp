#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tssdn/sim/time.hpp"

namespace tssdn::metrics {

enum class FlowKind : std::uint8_t { Stream, Udp };

struct LatencyRecord {
  FlowKind kind = FlowKind::Stream;
  std::string flow;
  std::uint64_t seq = 0;
  sim::SimTime send_time;
  sim::SimTime recv_time;

  std::int64_t latency_ns() const { return recv_time.count() - send_time.count(); }
  bool operator==(const LatencyRecord&) const = default;
};

enum class ControlDir : std::uint8_t { ToController, ToSwitch };

struct ControlTraceEntry {
  sim::SimTime at;  // delivery time
  ControlDir dir = ControlDir::ToController;
  std::string sw;
  std::string kind;
  std::uint32_t xid = 0;
};

/// Ordered happenings that tests assert on (handshake order, pipeline order).
enum class TraceKind : std::uint8_t {
  FilterCheck,         // ingress filter passed the frame
  FilterDrop,
  TableLookup,         // flow table (or built-in forwarding) consulted
  Enqueue,             // frame placed in an egress queue; detail = port
  MissToController,    // PacketIn emitted
  FlowModApplied,      // detail = match description
  MissActionApplied,
  SwitchSrUpdate,      // detail = "talker <port>" / "listener <port>"
  ControllerSrUpdate,  // detail = "<switch> talker|listener <port>"
  SrpSent,             // a switch or host sent an SRP frame; detail = kind
  ListenerReadyAtTalker,
  StreamStart,
  ArpResolved,
  UdpStart,
  Warning,
};

const char* to_string(TraceKind kind);

struct TraceEvent {
  sim::SimTime at;
  std::uint64_t order = 0;  // global insertion order
  std::string node;
  TraceKind kind = TraceKind::Warning;
  std::uint64_t frame_uid = 0;
  std::string stream;  // stream key when relevant
  std::string detail;
};

/// Collects everything a run produces besides the model state itself.
class MetricsSink {
 public:
  /// Per-frame pipeline tags (filter/lookup/enqueue) are only kept when enabled.
  void set_pipeline_tracing(bool on) { pipeline_tracing_ = on; }
  bool pipeline_tracing() const { return pipeline_tracing_; }

  std::uint16_t register_flow(FlowKind kind, std::string label);
  const std::string& flow_label(std::uint16_t handle) const { return flows_.at(handle).label; }
  FlowKind flow_kind(std::uint16_t handle) const { return flows_.at(handle).kind; }

  void record_latency(std::uint16_t flow, std::uint64_t seq, sim::SimTime sent, sim::SimTime received);
  void record_control(ControlTraceEntry entry) { control_.push_back(std::move(entry)); }
  void trace(sim::SimTime at, std::string node, TraceKind kind, std::uint64_t frame_uid = 0, std::string stream = {},
             std::string detail = {});
  void warn(sim::SimTime at, std::string node, std::string message);

  const std::vector<LatencyRecord>& records() const { return records_; }
  const std::vector<ControlTraceEntry>& control_trace() const { return control_; }
  const std::vector<TraceEvent>& events() const { return events_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  struct Flow {
    FlowKind kind;
    std::string label;
  };

  bool pipeline_tracing_ = false;
  std::vector<Flow> flows_;
  std::vector<LatencyRecord> records_;
  std::vector<ControlTraceEntry> control_;
  std::vector<TraceEvent> events_;
  std::vector<std::string> warnings_;
};

}  // namespace tssdn::metrics
