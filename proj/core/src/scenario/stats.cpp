#include "tssdn/scenario/stats.hpp"

#include <algorithm>
#include <set>

#include "tssdn/srp/reservation.hpp"

namespace tssdn::scenario {

FlowSummary summarize_flow(const std::vector<metrics::LatencyRecord>& records, const std::string& flow,
                           sim::SimTime window_start, sim::SimTime window_end) {
  FlowSummary out{flow, metrics::FlowKind::Stream, window_start, window_end, std::nullopt};
  long double sum = 0;
  LatencyStats s;
  for (const auto& r : records) {
    if (r.flow != flow) continue;
    out.kind = r.kind;
    if (r.send_time < window_start || r.send_time >= window_end) continue;
    const auto l = r.latency_ns();
    if (s.count == 0) {
      s.min_ns = s.max_ns = l;
    } else {
      s.min_ns = std::min(s.min_ns, l);
      s.max_ns = std::max(s.max_ns, l);
    }
    sum += l;
    ++s.count;
  }
  if (s.count > 0) {
    s.mean_ns = static_cast<double>(sum / s.count);
    out.stats = s;
  }
  return out;
}

std::vector<FlowSummary> summarize(const std::vector<metrics::LatencyRecord>& records, sim::SimTime window_start,
                                   sim::SimTime window_end) {
  std::vector<FlowSummary> out;
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (seen.insert(r.flow).second) out.push_back(summarize_flow(records, r.flow, window_start, window_end));
  }
  return out;
}

GuaranteeVerdict check_guarantee(const std::vector<metrics::LatencyRecord>& records, const srp::SrClass& cls,
                                 int scheduled_ports, const std::optional<std::string>& flow) {
  GuaranteeVerdict v;
  v.bound = srp::analytic_guarantee(cls, scheduled_ports);
  for (const auto& r : records) {
    if (r.kind != metrics::FlowKind::Stream || (flow && r.flow != *flow)) continue;
    ++v.checked;
    if (!v.worst || r.latency_ns() > v.worst->latency_ns()) v.worst = r;
    if (r.latency_ns() > v.bound.count()) ++v.violations;
  }
  if (v.checked == 0) {
    v.reason = "no stream frames observed";
    return v;
  }
  v.pass = v.violations == 0;
  v.reason = v.pass ? "all stream latencies within " + v.bound.to_string()
                    : std::to_string(v.violations) + " stream frame(s) exceed " + v.bound.to_string();
  return v;
}

}  // namespace tssdn::scenario
