#include "tssdn/scenario/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tssdn::scenario {

std::vector<metrics::LatencyRecord> flow_records(const std::vector<metrics::LatencyRecord>& records,
                                                 const std::string& flow) {
  std::vector<metrics::LatencyRecord> out;
  for (const auto& r : records)
    if (r.flow == flow) out.push_back(r);
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.seq < y.seq; });
  return out;
}

namespace {

std::map<std::uint64_t, std::int64_t> by_seq(const std::vector<metrics::LatencyRecord>& records,
                                             const std::string& flow) {
  std::map<std::uint64_t, std::int64_t> out;
  for (const auto& r : records)
    if (r.flow == flow) out.emplace(r.seq, r.latency_ns());
  return out;
}

}  // namespace

std::vector<SeqMismatch> compare_per_seq(const std::vector<metrics::LatencyRecord>& a,
                                         const std::vector<metrics::LatencyRecord>& b, const std::string& flow,
                                         sim::SimTime from, std::size_t* compared) {
  const auto other = by_seq(b, flow);
  std::vector<SeqMismatch> out;
  std::size_t n = 0;
  for (const auto& r : flow_records(a, flow)) {
    if (r.send_time < from) continue;
    ++n;
    auto it = other.find(r.seq);
    if (it == other.end()) {
      out.push_back({r.seq, r.latency_ns(), std::nullopt});
    } else if (it->second != r.latency_ns()) {
      out.push_back({r.seq, r.latency_ns(), it->second});
    }
  }
  if (compared) *compared = n;
  return out;
}

std::optional<sim::SimTime> convergence_time(const std::vector<metrics::LatencyRecord>& a,
                                             const std::vector<metrics::LatencyRecord>& b, const std::string& flow) {
  const auto other = by_seq(b, flow);
  const auto mine = flow_records(a, flow);
  std::optional<sim::SimTime> t;
  for (auto it = mine.rbegin(); it != mine.rend(); ++it) {
    auto o = other.find(it->seq);
    if (o == other.end() || o->second != it->latency_ns()) break;
    t = it->send_time;
  }
  return t;
}

std::vector<sim::SimTime> reactive_install_times(const RunResult& run, const UdpInfo& udp) {
  std::vector<sim::SimTime> out;
  if (!udp.dst_mac) return out;
  for (const auto& [sw, mods] : run.flow_mods) {
    for (const auto& m : mods) {
      if (m.match.eth_src == udp.src_mac && m.match.eth_dst == *udp.dst_mac) {
        out.push_back(m.at);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

sim::SimTime expected_setup_delay(const control::ChannelDelays& delays, int sdn_switches) {
  const auto round_trip = delays.one_way + delays.one_way + delays.processing;
  return round_trip * (2 * std::max(sdn_switches, 0));
}

std::vector<std::optional<std::int64_t>> window_maxima(const std::vector<metrics::LatencyRecord>& records,
                                                       const std::string& flow, const std::vector<sim::SimTime>& cuts) {
  std::vector<std::optional<std::int64_t>> out(cuts.size() > 1 ? cuts.size() - 1 : 0);
  for (const auto& r : records) {
    if (r.flow != flow) continue;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (r.send_time >= cuts[i] && r.send_time < cuts[i + 1]) {
        out[i] = std::max(out[i].value_or(r.latency_ns()), r.latency_ns());
        break;
      }
    }
  }
  return out;
}

StepCheck step_profile(const RunResult& run, const std::string& stream_flow, const UdpInfo& udp) {
  StepCheck c;
  const auto* stream = run.stream(stream_flow);
  if (!stream || !stream->first_send || !udp.first_send) return c;
  c.cuts.push_back(*stream->first_send);
  c.cuts.push_back(*udp.first_send);
  for (auto t : reactive_install_times(run, udp)) c.cuts.push_back(std::max(t, c.cuts.back()));
  c.cuts.push_back(run.until + sim::SimTime::ns(1));
  c.levels = window_maxima(run.records, stream_flow, c.cuts);

  c.non_decreasing = true;
  std::optional<std::int64_t> prev;
  for (const auto& l : c.levels) {
    if (!l) continue;
    if (prev && *l < *prev) c.non_decreasing = false;
    prev = l;
  }
  std::set<std::int64_t> distinct;
  for (std::size_t i = 0; i + 1 < c.levels.size(); ++i)
    if (c.levels[i]) distinct.insert(*c.levels[i]);
  c.distinct_before_steady = static_cast<int>(distinct.size());
  return c;
}

std::vector<StreamVerdict> check_run_guarantees(const RunResult& run) {
  std::vector<StreamVerdict> out;
  for (const auto& s : run.streams) {
    if (s.scheduled_ports < 1) {
      GuaranteeVerdict v;
      v.reason = "stream has no listener";
      out.push_back({s.label, v});
      continue;
    }
    out.push_back({s.label, check_guarantee(run.records, s.sr_class, s.scheduled_ports, s.label)});
  }
  if (out.empty()) {
    GuaranteeVerdict v;
    v.reason = "no stream frames observed";
    out.push_back({"(none)", v});
  }
  return out;
}

bool Comparison::steady_identical() const {
  if (steady_mismatches.empty()) return false;
  for (const auto& [flow, mm] : steady_mismatches) {
    if (!mm.empty() || steady_compared.at(flow) == 0) return false;
  }
  return true;
}

bool Comparison::udp_converged() const {
  if (udp_convergence.empty()) return false;
  for (const auto& [flow, t] : udp_convergence) {
    const auto& start = udp_traffic_start.at(flow);
    if (!t || !start || *t - *start > convergence_bound) return false;
  }
  return true;
}

bool Comparison::first_udp_penalty() const {
  if (first_udp_latency_ns.empty()) return false;
  for (const auto& [flow, first] : first_udp_latency_ns) {
    const auto& steady = steady_udp_max_ns.at(flow);
    if (!first || !steady || *first <= *steady) return false;
  }
  return true;
}

Comparison compare_runs(const RunResult& sdn, const RunResult& nosdn, const ScenarioConfig& sdn_cfg) {
  Comparison c;
  c.convergence_bound = sdn_cfg.analysis.convergence_bound;

  std::optional<sim::SimTime> traffic_start;
  for (const auto& u : sdn.udp)
    if (u.first_send) traffic_start = std::min(traffic_start.value_or(*u.first_send), *u.first_send);
  for (const auto& s : sdn.streams)
    if (!traffic_start && s.first_send) traffic_start = s.first_send;
  c.steady_from = traffic_start.value_or(sdn.until) + c.convergence_bound;

  if (!sdn.streams.empty()) {
    const auto& s = sdn.streams.front();
    if (const auto* n = nosdn.stream(s.label); n && s.first_send && n->first_send)
      c.stream_start_delta_ns = s.first_send->count() - n->first_send->count();
    c.expected_setup_delta_ns = expected_setup_delay(sdn_cfg.channel_delays(), s.scheduled_ports - 1).count();
  }
  for (const auto& s : sdn.streams) {
    std::size_t n = 0;
    c.steady_mismatches[s.label] = compare_per_seq(sdn.records, nosdn.records, s.label, c.steady_from, &n);
    c.steady_compared[s.label] = n;
  }
  for (const auto& u : sdn.udp) {
    const auto conv = convergence_time(sdn.records, nosdn.records, u.label);
    c.udp_convergence[u.label] = conv;
    c.udp_traffic_start[u.label] = u.first_send;
    const auto recs = flow_records(sdn.records, u.label);
    std::optional<std::int64_t> first;
    std::optional<std::int64_t> steady;
    if (!recs.empty() && recs.front().seq == 0) first = recs.front().latency_ns();
    for (const auto& r : recs) {
      if (r.send_time >= conv.value_or(c.steady_from)) steady = std::max(steady.value_or(r.latency_ns()), r.latency_ns());
    }
    c.first_udp_latency_ns[u.label] = first;
    c.steady_udp_max_ns[u.label] = steady;
  }
  return c;
}

}  // namespace tssdn::scenario
