#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tssdn/scenario/config.hpp"
#include "tssdn/scenario/scenario.hpp"
#include "tssdn/scenario/stats.hpp"

namespace tssdn::scenario {

/// Records of one flow ordered by sequence number.
std::vector<metrics::LatencyRecord> flow_records(const std::vector<metrics::LatencyRecord>& records,
                                                 const std::string& flow);

struct SeqMismatch {
  std::uint64_t seq = 0;
  std::int64_t latency_a_ns = 0;
  std::optional<std::int64_t> latency_b_ns;  // empty: seq missing from run b
};

/// Per-seq latency comparison of `flow` for every record of run `a` sent at
/// or after `from` (a's clock). Returns the mismatches; `compared` receives the
/// number of records looked at.
std::vector<SeqMismatch> compare_per_seq(const std::vector<metrics::LatencyRecord>& a,
                                         const std::vector<metrics::LatencyRecord>& b, const std::string& flow,
                                         sim::SimTime from, std::size_t* compared = nullptr);

/// Send time (in run `a`) of the first record of the longest suffix of `flow`
/// whose per-seq latencies all equal run `b`'s. Empty when even the last record
/// differs or the flow has no records.
std::optional<sim::SimTime> convergence_time(const std::vector<metrics::LatencyRecord>& a,
                                             const std::vector<metrics::LatencyRecord>& b, const std::string& flow);

/// Per switch, when the reactive rule carrying `udp` was installed (sorted).
std::vector<sim::SimTime> reactive_install_times(const RunResult& run, const UdpInfo& udp);

/// Extra SR setup time the control channel adds on a path through
/// `sdn_switches` switches: two SRP messages, each one round trip per switch.
sim::SimTime expected_setup_delay(const control::ChannelDelays& delays, int sdn_switches);

/// Highest stream latency among frames sent in each [cuts[i], cuts[i+1]).
/// Windows without frames yield an empty entry.
std::vector<std::optional<std::int64_t>> window_maxima(const std::vector<metrics::LatencyRecord>& records,
                                                       const std::string& flow, const std::vector<sim::SimTime>& cuts);

struct StepCheck {
  std::vector<sim::SimTime> cuts;
  std::vector<std::optional<std::int64_t>> levels;  // max latency per window, last = steady state
  bool non_decreasing = false;
  int distinct_before_steady = 0;
};

/// Stream latency levels across the instants cross traffic starts and each
/// reactive rule installs.
StepCheck step_profile(const RunResult& run, const std::string& stream_flow, const UdpInfo& udp);

struct Comparison {
  sim::SimTime steady_from;  // SDN clock
  std::optional<std::int64_t> stream_start_delta_ns;
  std::int64_t expected_setup_delta_ns = 0;
  std::map<std::string, std::vector<SeqMismatch>> steady_mismatches;  // stream flows
  std::map<std::string, std::size_t> steady_compared;
  std::map<std::string, std::optional<sim::SimTime>> udp_convergence;  // absolute SDN time
  std::map<std::string, std::optional<sim::SimTime>> udp_traffic_start;
  std::map<std::string, std::optional<std::int64_t>> first_udp_latency_ns;
  std::map<std::string, std::optional<std::int64_t>> steady_udp_max_ns;
  sim::SimTime convergence_bound;

  bool steady_identical() const;
  bool setup_delta_matches() const {
    return stream_start_delta_ns && *stream_start_delta_ns == expected_setup_delta_ns;
  }
  bool udp_converged() const;
  bool first_udp_penalty() const;
};

struct StreamVerdict {
  std::string flow;
  GuaranteeVerdict verdict;
};

/// Guarantee check for every configured stream against its own path length.
/// A run without streams yields one failing verdict: nothing was verified.
std::vector<StreamVerdict> check_run_guarantees(const RunResult& run);

/// Differential analysis of an SDN run against its no-SDN twin.
Comparison compare_runs(const RunResult& sdn, const RunResult& nosdn, const ScenarioConfig& sdn_cfg);

}  // namespace tssdn::scenario
