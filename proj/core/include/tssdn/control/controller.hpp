#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tssdn/control/control_channel.hpp"
#include "tssdn/metrics/sink.hpp"
#include "tssdn/sim/network.hpp"

namespace tssdn::control {

struct ControllerConfig {
  std::string name = "controller";
  int stream_priority = 100;
  int reactive_priority = 10;
};

/// Controller-side view of one stream: where its talker sits on every switch
/// the advertise has passed, and which ports lead to listeners.
struct ControllerStream {
  struct AtSwitch {
    PortId talker_port = 0;
    std::set<PortId> listener_ports;
    sim::SimTime last_advertise;
  };
  frames::StreamDescriptor descriptor;
  std::map<std::size_t, AtSwitch> switches;
};

struct ControllerCounters {
  std::uint64_t packet_in = 0;
  std::uint64_t packet_out = 0;
  std::uint64_t flow_mods = 0;
  std::uint64_t srp_forwarded = 0;
  std::uint64_t srp_suppressed = 0;
  std::uint64_t srp_dropped = 0;
  std::uint64_t topology_changes = 0;
  std::uint64_t stream_packet_in = 0;
};

/// SDN controller running two applications: an SR manager (ForwardSRP) and
/// reactive L2 forwarding for ordinary traffic (PacketIn).
class Controller : public sim::Node, public ControlEndpoint {
 public:
  Controller(sim::Simulator& sim, ControllerConfig config = {}, metrics::MetricsSink* sink = nullptr);

  std::size_t port_count() const override { return 0; }
  void receive(sim::PortId, frames::EthernetFrame) override;
  void on_control(std::size_t channel, ControlMessage msg) override;

  /// Registers the channel of one switch; returns its index.
  std::size_t add_channel(ControlChannel* channel);

  /// Starts the Hello / FeaturesReply handshake with every switch; each reply
  /// is answered with a table-miss FlowMod that sends misses to the controller.
  void bootstrap();

  void on_forward_srp(std::size_t sw, const ForwardSrp& msg);
  void on_packet_in(std::size_t sw, const PacketIn& msg);

  bool switch_ready(std::size_t sw) const { return ready_.at(sw); }
  std::size_t switch_count() const { return channels_.size(); }
  const ControllerStream* stream(const srp::StreamId& id) const;
  const std::map<srp::StreamId, ControllerStream>& streams() const { return streams_; }
  std::optional<PortId> learned_port(std::size_t sw, const frames::MacAddress& mac) const;
  const ControllerCounters& counters() const { return counters_; }

 private:
  void send(std::size_t sw, ControlBody body);
  void install(std::size_t sw, switching::FlowMatch match, int priority, std::vector<switching::FlowAction> actions);
  void warn(const std::string& message);

  sim::Simulator& sim_;
  ControllerConfig config_;
  metrics::MetricsSink* sink_;
  std::vector<ControlChannel*> channels_;
  std::vector<bool> ready_;
  std::vector<std::size_t> port_counts_;
  std::map<srp::StreamId, ControllerStream> streams_;
  std::map<std::pair<std::size_t, frames::MacAddress>, PortId> mac_table_;
  ControllerCounters counters_;
};

}  // namespace tssdn::control
