#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tssdn/metrics/sink.hpp"
#include "tssdn/srp/stream_id.hpp"

namespace tssdn::scenario {

struct LatencyStats {
  std::int64_t min_ns = 0;
  double mean_ns = 0.0;
  std::int64_t max_ns = 0;
  std::size_t count = 0;
};

/// Statistics of one flow over records whose send time lies in [window_start, window_end).
struct FlowSummary {
  std::string flow;
  metrics::FlowKind kind = metrics::FlowKind::Stream;
  sim::SimTime window_start;
  sim::SimTime window_end;
  std::optional<LatencyStats> stats;  // empty window -> no stats

  bool empty() const { return !stats.has_value(); }
};

FlowSummary summarize_flow(const std::vector<metrics::LatencyRecord>& records, const std::string& flow,
                           sim::SimTime window_start, sim::SimTime window_end);

/// One summary per flow, in order of first appearance.
std::vector<FlowSummary> summarize(const std::vector<metrics::LatencyRecord>& records, sim::SimTime window_start,
                                   sim::SimTime window_end);

struct GuaranteeVerdict {
  bool pass = false;
  sim::SimTime bound;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::optional<metrics::LatencyRecord> worst;  // highest-latency record seen
  std::string reason;
};

/// Pass iff at least one stream record exists and every stream latency is
/// within the analytic bound of `cls` over `scheduled_ports`. Restricted to
/// `flow` when given.
GuaranteeVerdict check_guarantee(const std::vector<metrics::LatencyRecord>& records, const srp::SrClass& cls,
                                 int scheduled_ports, const std::optional<std::string>& flow = std::nullopt);

}  // namespace tssdn::scenario
