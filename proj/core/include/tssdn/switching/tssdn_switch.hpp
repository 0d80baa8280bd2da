#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tssdn/control/control_channel.hpp"
#include "tssdn/metrics/sink.hpp"
#include "tssdn/sim/network.hpp"
#include "tssdn/srp/reservation.hpp"
#include "tssdn/switching/egress_port.hpp"
#include "tssdn/switching/flow_table.hpp"
#include "tssdn/switching/ingress_filter.hpp"
#include "tssdn/switching/sr_table.hpp"

namespace tssdn::switching {

inline constexpr int kStreamFlowPriority = 100;
inline constexpr int kReactiveFlowPriority = 10;

struct SwitchConfig {
  std::string name;
  std::size_t ports = 2;
  std::size_t queue_capacity = kDefaultQueueCapacity;
  double admission_fraction = srp::kDefaultAdmissionFraction;
  /// true: flow-table forwarding under a controller; false: standalone TSN
  /// bridge (SR-table forwarding for streams, MAC learning otherwise).
  bool sdn = false;
  /// Fault injection: egress ports degrade to a single unshaped FIFO.
  bool shaper_disabled = false;
};

struct SwitchCounters {
  std::string name;
  std::uint64_t forwarded = 0;
  std::uint64_t dropped_filter = 0;
  std::uint64_t dropped_miss = 0;
  std::uint64_t dropped_action = 0;
  std::uint64_t dropped_no_listener = 0;
  std::uint64_t dropped_overflow = 0;
  std::uint64_t sent_to_controller = 0;
  std::uint64_t stream_miss = 0;  // StreamData frames that found no flow entry
  std::uint64_t srp_to_controller = 0;
  std::uint64_t srp_dropped = 0;
  std::uint64_t admission_rejected = 0;
  std::vector<std::array<std::size_t, kNumQueues>> max_queue_depth;  // [port][pcp]
};

struct FlowModRecord {
  sim::SimTime at;
  FlowMatch match;
  int priority = 0;
  std::vector<FlowAction> actions;
};

/// Trace key for a stream as seen on the wire: "<group>@<vid>".
std::string stream_key(const frames::MacAddress& group, std::uint16_t vid);

/// Merged TSN/SDN switch: ingress filter -> flow table -> egress control.
class TssdnSwitch : public sim::Node, public control::ControlEndpoint {
 public:
  TssdnSwitch(sim::Simulator& sim, SwitchConfig config, metrics::MetricsSink* sink = nullptr);

  std::size_t port_count() const override { return config_.ports; }
  void receive(sim::PortId port, frames::EthernetFrame frame) override;
  void on_added() override;
  void on_control(std::size_t channel, control::ControlMessage msg) override;

  void attach_controller(control::ControlChannel* channel) { channel_ = channel; }
  void set_port_rate(sim::PortId port, std::int64_t rate_bps);

  /// Dataplane pipeline for non-SRP frames: filter, lookup, actions.
  void ingress(frames::EthernetFrame frame, sim::PortId in_port);

  /// Applies an SRP message that has cleared the control path (controller in
  /// SDN mode, directly otherwise) and propagates it.
  void update_sr_table(const frames::SrpMessage& srp, sim::PortId in_port);

  const SwitchConfig& config() const { return config_; }
  EgressPort& port(sim::PortId p) { return *ports_.at(p); }
  FlowTable& flow_table() { return table_; }
  const FlowTable& flow_table() const { return table_; }
  const SrTable& sr_table() const { return sr_; }
  const IngressFilter& ingress_filter() const { return filter_; }
  const srp::PortBudget& budget(sim::PortId p) const { return budgets_.at(p); }
  SwitchCounters counters() const;
  const std::vector<FlowModRecord>& flow_mods() const { return flow_mods_; }
  frames::MacAddress mac() const;

 private:
  void execute(const FlowEntry& entry, const frames::EthernetFrame& frame, sim::PortId in_port);
  void builtin_forward(const frames::EthernetFrame& frame, sim::PortId in_port);
  void output(frames::EthernetFrame frame, sim::PortId port);
  void flood(const frames::EthernetFrame& frame, sim::PortId except);
  void packet_in(frames::EthernetFrame frame, sim::PortId in_port, control::PacketInReason reason);
  void send_srp(const frames::SrpMessage& srp, sim::PortId port);
  void trace(metrics::TraceKind kind, std::uint64_t uid, std::string stream = {}, std::string detail = {});
  bool tracing() const { return sink_ && sink_->pipeline_tracing(); }

  sim::Simulator& sim_;
  SwitchConfig config_;
  metrics::MetricsSink* sink_;
  control::ControlChannel* channel_ = nullptr;

  std::vector<std::unique_ptr<EgressPort>> ports_;
  std::vector<srp::PortBudget> budgets_;
  FlowTable table_;
  SrTable sr_;
  IngressFilter filter_;
  std::map<frames::MacAddress, sim::PortId> mac_table_;  // standalone mode only
  std::vector<FlowModRecord> flow_mods_;
  SwitchCounters counters_;
};

}  // namespace tssdn::switching
