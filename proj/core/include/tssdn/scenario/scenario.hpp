#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tssdn/control/controller.hpp"
#include "tssdn/hosts/apps.hpp"
#include "tssdn/metrics/sink.hpp"
#include "tssdn/scenario/config.hpp"
#include "tssdn/sim/network.hpp"
#include "tssdn/switching/tssdn_switch.hpp"

namespace tssdn::scenario {

struct StreamInfo {
  std::string label;
  srp::StreamId id;
  std::string talker;
  std::vector<std::string> listeners;
  srp::SrClass sr_class;
  int scheduled_ports = 0;  // worst over all listeners
  std::optional<sim::SimTime> listener_ready_at;
  std::optional<sim::SimTime> first_send;
  std::uint64_t sent = 0;
};

struct UdpInfo {
  std::string label;
  std::string source;
  frames::MacAddress src_mac;
  std::optional<frames::MacAddress> dst_mac;  // empty when no client owns the address
  std::optional<sim::SimTime> resolved_at;
  std::optional<sim::SimTime> first_send;
  std::uint64_t sent = 0;
};

struct HostCountersRow {
  std::string name;
  hosts::HostCounters counters;
};

struct RunResult {
  std::string name;
  bool sdn = false;
  sim::SimTime until;
  std::vector<metrics::LatencyRecord> records;
  std::vector<metrics::ControlTraceEntry> control_trace;
  std::vector<metrics::TraceEvent> events;
  std::vector<std::string> warnings;
  std::vector<switching::SwitchCounters> switch_counters;
  std::vector<HostCountersRow> host_counters;
  std::optional<control::ControllerCounters> controller_counters;
  std::map<std::string, std::vector<switching::FlowModRecord>> flow_mods;  // per switch
  std::vector<StreamInfo> streams;
  std::vector<UdpInfo> udp;
  std::uint64_t dispatch_hash = 0;
  std::uint64_t events_dispatched = 0;

  /// StreamData frames that found no flow entry, summed over all switches.
  std::uint64_t stream_misses() const;
  const StreamInfo* stream(const std::string& label) const;
  const UdpInfo* udp_flow(const std::string& label) const;
};

struct RunOptions {
  std::optional<sim::SimTime> until;  // overrides cfg.run_until
  bool pipeline_tracing = false;
  bool keep_dispatch_log = false;
};

/// A built, runnable instance of a scenario. Owns every model object.
class Scenario {
 public:
  explicit Scenario(const ScenarioConfig& cfg, bool pipeline_tracing = false);
  ~Scenario();

  Scenario(const Scenario&) = delete;
  Scenario& operator=(const Scenario&) = delete;

  void run_until(sim::SimTime t);
  RunResult result() const;

  sim::Simulator& sim() { return sim_; }
  sim::Network& network() { return net_; }
  metrics::MetricsSink& sink() { return sink_; }
  control::Controller* controller() { return controller_; }
  switching::TssdnSwitch& switch_node(const std::string& name) const;
  hosts::Host& host(const std::string& name) const;
  const std::vector<hosts::Talker*>& talkers() const { return talkers_; }
  const std::vector<hosts::Listener*>& listeners() const { return listeners_; }
  const std::vector<hosts::UdpSource*>& udp_sources() const { return udp_sources_; }
  const ScenarioConfig& config() const { return cfg_; }

 private:
  ScenarioConfig cfg_;
  sim::Simulator sim_;
  sim::Network net_;
  metrics::MetricsSink sink_;
  control::Controller* controller_ = nullptr;
  std::vector<std::unique_ptr<control::ControlChannel>> channels_;
  std::map<std::string, switching::TssdnSwitch*> switches_;
  std::map<std::string, hosts::Host*> hosts_;
  std::vector<hosts::Talker*> talkers_;
  std::vector<hosts::Listener*> listeners_;
  std::vector<hosts::UdpSource*> udp_sources_;
  std::vector<StreamInfo> stream_info_;
  std::vector<UdpInfo> udp_info_;
};

/// Builds the scenario and runs it to cfg.run_until (or the override).
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {});

}  // namespace tssdn::scenario
