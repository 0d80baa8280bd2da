#include "tssdn/scenario/report.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tssdn::scenario {

namespace {

std::string us(std::int64_t ns) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << static_cast<double>(ns) / 1000.0 << " us";
  return os.str();
}

std::string us(double ns) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << ns / 1000.0 << " us";
  return os.str();
}

std::string opt_time(const std::optional<sim::SimTime>& t) { return t ? t->to_string() : "never"; }

const char* dir_name(metrics::ControlDir d) {
  return d == metrics::ControlDir::ToController ? "to_controller" : "to_switch";
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

void summary_table(std::ostream& os, const std::vector<FlowSummary>& summaries) {
  for (const auto& s : summaries) {
    os << "  " << std::left << std::setw(10) << s.flow;
    if (s.empty()) {
      os << " empty window\n";
      continue;
    }
    os << " min " << us(s.stats->min_ns) << "  mean " << us(s.stats->mean_ns) << "  max " << us(s.stats->max_ns)
       << "  (" << s.stats->count << " frames)\n";
  }
}

void verdict_lines(std::ostream& os, const std::vector<StreamVerdict>& verdicts) {
  for (const auto& [flow, v] : verdicts) {
    os << "  " << flow << ": " << (v.pass ? "PASS" : "FAIL") << " - " << v.reason;
    if (v.worst)
      os << "; worst seq " << v.worst->seq << " sent " << v.worst->send_time.to_string() << " latency "
         << us(v.worst->latency_ns()) << " (bound " << us(v.bound.count()) << ")";
    os << "\n";
  }
}

}  // namespace

void write_frames_csv(std::ostream& out, const std::vector<metrics::LatencyRecord>& records) {
  out << kFramesHeader << "\n";
  for (const auto& r : records)
    out << r.flow << ',' << r.seq << ',' << r.send_time.count() << ',' << r.recv_time.count() << ',' << r.latency_ns()
        << "\n";
}

void write_summary_csv(std::ostream& out, const std::vector<FlowSummary>& summaries) {
  out << kSummaryHeader << "\n";
  for (const auto& s : summaries) {
    out << s.flow << ',';
    if (s.empty()) {
      out << "empty,empty,empty";
    } else {
      out << s.stats->min_ns << ',' << std::fixed << std::setprecision(3) << s.stats->mean_ns << ',' << s.stats->max_ns;
    }
    out << ',' << s.window_start.count() << ',' << s.window_end.count() << "\n";
  }
}

void write_control_trace_csv(std::ostream& out, const std::vector<metrics::ControlTraceEntry>& trace) {
  out << kControlTraceHeader << "\n";
  for (const auto& e : trace)
    out << e.at.count() << ',' << dir_name(e.dir) << ',' << e.sw << ',' << e.kind << ',' << e.xid << "\n";
}

void write_counters_csv(std::ostream& out, const RunResult& run) {
  out << "node,counter,value\n";
  for (const auto& c : run.switch_counters) {
    const std::pair<const char*, std::uint64_t> rows[] = {
        {"forwarded", c.forwarded},
        {"dropped_filter", c.dropped_filter},
        {"dropped_miss", c.dropped_miss},
        {"dropped_action", c.dropped_action},
        {"dropped_no_listener", c.dropped_no_listener},
        {"dropped_overflow", c.dropped_overflow},
        {"sent_to_controller", c.sent_to_controller},
        {"stream_miss", c.stream_miss},
        {"srp_to_controller", c.srp_to_controller},
        {"srp_dropped", c.srp_dropped},
        {"admission_rejected", c.admission_rejected},
    };
    for (const auto& [k, v] : rows) out << c.name << ',' << k << ',' << v << "\n";
    for (std::size_t p = 0; p < c.max_queue_depth.size(); ++p)
      for (std::size_t q = 0; q < c.max_queue_depth[p].size(); ++q)
        if (c.max_queue_depth[p][q] > 0)
          out << c.name << ",max_queue_depth_p" << p << "_q" << q << ',' << c.max_queue_depth[p][q] << "\n";
  }
  for (const auto& [name, h] : run.host_counters) {
    out << name << ",sent," << h.sent << "\n"
        << name << ",received," << h.received << "\n"
        << name << ",arp_replies_sent," << h.arp_replies_sent << "\n"
        << name << ",unhandled," << h.unhandled << "\n"
        << name << ",nic_overflow," << h.nic_overflow << "\n";
  }
  if (const auto& c = run.controller_counters) {
    out << "controller,packet_in," << c->packet_in << "\n"
        << "controller,packet_out," << c->packet_out << "\n"
        << "controller,flow_mods," << c->flow_mods << "\n"
        << "controller,srp_forwarded," << c->srp_forwarded << "\n"
        << "controller,srp_suppressed," << c->srp_suppressed << "\n"
        << "controller,srp_dropped," << c->srp_dropped << "\n"
        << "controller,topology_changes," << c->topology_changes << "\n"
        << "controller,stream_packet_in," << c->stream_packet_in << "\n";
  }
}

std::vector<FlowSummary> summarize_run(const RunResult& run, const ScenarioConfig& cfg) {
  return summarize(run.records, cfg.analysis.window_start.value_or(sim::SimTime{}),
                   cfg.analysis.window_end.value_or(run.until));
}

std::string run_report(const RunResult& run, const std::vector<FlowSummary>& summaries,
                       const std::vector<StreamVerdict>& verdicts) {
  std::ostringstream os;
  os << "scenario " << run.name << " (" << (run.sdn ? "SDN" : "no SDN") << "), simulated until "
     << run.until.to_string() << "\n";
  os << "events dispatched: " << run.events_dispatched << ", dispatch hash " << std::hex << std::setw(16)
     << std::setfill('0') << run.dispatch_hash << std::dec << std::setfill(' ') << "\n\n";

  os << "streams:\n";
  for (const auto& s : run.streams) {
    os << "  " << s.label << " " << s.id.to_string() << " class " << srp::to_string(s.sr_class.name) << ", "
       << s.scheduled_ports << " scheduled ports, listener ready " << opt_time(s.listener_ready_at)
       << ", first frame " << opt_time(s.first_send) << ", " << s.sent << " sent\n";
  }
  os << "cross traffic:\n";
  for (const auto& u : run.udp) {
    os << "  " << u.label << " from " << u.source << ": ARP resolved " << opt_time(u.resolved_at) << ", first frame "
       << opt_time(u.first_send) << ", " << u.sent << " sent\n";
  }
  if (!summaries.empty()) {
    os << "\nlatency [" << summaries.front().window_start.to_string() << ", "
       << summaries.front().window_end.to_string() << "):\n";
    summary_table(os, summaries);
  }
  os << "\nguarantee:\n";
  verdict_lines(os, verdicts);
  os << "\nstream table misses: " << run.stream_misses() << "\n";
  if (!run.warnings.empty()) {
    os << "\nwarnings (" << run.warnings.size() << "):\n";
    for (const auto& w : run.warnings) os << "  " << w << "\n";
  }
  return os.str();
}

std::string comparison_report(const RunResult& sdn, const RunResult& nosdn, const Comparison& cmp,
                              const std::vector<StreamVerdict>& sdn_verdicts,
                              const std::vector<StreamVerdict>& nosdn_verdicts) {
  std::ostringstream os;
  os << "comparison: " << sdn.name << " (SDN) vs " << nosdn.name << " (no SDN)\n\n";

  os << "setup:\n  stream start delta: "
     << (cmp.stream_start_delta_ns ? us(*cmp.stream_start_delta_ns) : std::string("n/a")) << ", expected from control "
     << "channel " << us(cmp.expected_setup_delta_ns) << " -> " << (cmp.setup_delta_matches() ? "match" : "MISMATCH")
     << "\n\n";

  os << "steady state (frames sent from " << cmp.steady_from.to_string() << "):\n";
  for (const auto& [flow, mm] : cmp.steady_mismatches) {
    os << "  " << flow << ": " << cmp.steady_compared.at(flow) << " frames compared per seq, " << mm.size()
       << " differ\n";
  }
  const auto sdn_steady = summarize(sdn.records, cmp.steady_from, sdn.until);
  const auto nosdn_steady = summarize(nosdn.records, cmp.steady_from, nosdn.until);
  for (const auto& a : sdn_steady) {
    for (const auto& b : nosdn_steady) {
      if (a.flow != b.flow || a.empty() || b.empty()) continue;
      os << "  " << a.flow << " delta (SDN - no SDN): min " << us(a.stats->min_ns - b.stats->min_ns) << ", mean "
         << us(a.stats->mean_ns - b.stats->mean_ns) << ", max " << us(a.stats->max_ns - b.stats->max_ns) << "\n";
    }
  }

  os << "\ncross traffic:\n";
  for (const auto& [flow, conv] : cmp.udp_convergence) {
    const auto& start = cmp.udp_traffic_start.at(flow);
    os << "  " << flow << ": traffic start " << opt_time(start) << ", matches no-SDN run from " << opt_time(conv);
    if (conv && start) os << " (" << (*conv - *start).to_string() << " after start, bound " << cmp.convergence_bound.to_string() << ")";
    os << "\n";
    const auto& first = cmp.first_udp_latency_ns.at(flow);
    const auto& steady = cmp.steady_udp_max_ns.at(flow);
    os << "    first frame latency " << (first ? us(*first) : std::string("n/a")) << ", steady-state max "
       << (steady ? us(*steady) : std::string("n/a")) << "\n";
  }

  os << "\nwhole run, SDN:\n";
  summary_table(os, summarize(sdn.records, sim::SimTime{}, sdn.until));
  os << "whole run, no SDN:\n";
  summary_table(os, summarize(nosdn.records, sim::SimTime{}, nosdn.until));

  os << "\nreference magnitudes (calibration-dependent, shown for orientation only):\n"
     << "  no SDN  stream min 110 / mean 390 / max 499 us;  UDP min 423 / mean 481 / max 820 us\n"
     << "  SDN     stream min 210 / mean 373 / max 483 us;  UDP min 408 / mean 466 / max 1478 us\n";

  os << "\nguarantee, SDN:\n";
  verdict_lines(os, sdn_verdicts);
  os << "guarantee, no SDN:\n";
  verdict_lines(os, nosdn_verdicts);
  os << "\nstream table misses (SDN): " << sdn.stream_misses() << "\n";
  return os.str();
}

void emit_outputs(const RunResult& run, const ScenarioConfig& cfg, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const auto summaries = summarize_run(run, cfg);
  write_file(dir / "frames.csv", [&](std::ostream& o) { write_frames_csv(o, run.records); });
  write_file(dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, summaries); });
  write_file(dir / "control_trace.csv", [&](std::ostream& o) { write_control_trace_csv(o, run.control_trace); });
  write_file(dir / "counters.csv", [&](std::ostream& o) { write_counters_csv(o, run); });
  write_file(dir / "report.txt", [&](std::ostream& o) { o << run_report(run, summaries, check_run_guarantees(run)); });
}

void emit_comparison(const RunResult& sdn, const ScenarioConfig& sdn_cfg, const RunResult& nosdn,
                     const ScenarioConfig& nosdn_cfg, const Comparison& cmp, const std::filesystem::path& dir) {
  emit_outputs(sdn, sdn_cfg, dir / "sdn");
  emit_outputs(nosdn, nosdn_cfg, dir / "nosdn");
  write_file(dir / "comparison.txt", [&](std::ostream& o) {
    o << comparison_report(sdn, nosdn, cmp, check_run_guarantees(sdn), check_run_guarantees(nosdn));
  });
}

}  // namespace tssdn::scenario
