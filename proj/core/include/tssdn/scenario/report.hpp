#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tssdn/scenario/analysis.hpp"
#include "tssdn/scenario/stats.hpp"

namespace tssdn::scenario {

inline constexpr const char* kFramesHeader = "flow,seq,send_ns,recv_ns,latency_ns";
inline constexpr const char* kSummaryHeader = "flow,min_ns,mean_ns,max_ns,window_start_ns,window_end_ns";
inline constexpr const char* kControlTraceHeader = "time_ns,dir,switch,kind,xid";

void write_frames_csv(std::ostream& out, const std::vector<metrics::LatencyRecord>& records);
/// Empty windows are written as "empty" in the statistic columns.
void write_summary_csv(std::ostream& out, const std::vector<FlowSummary>& summaries);
void write_control_trace_csv(std::ostream& out, const std::vector<metrics::ControlTraceEntry>& trace);
void write_counters_csv(std::ostream& out, const RunResult& run);

/// Summary window from the config, defaulting to the whole run.
std::vector<FlowSummary> summarize_run(const RunResult& run, const ScenarioConfig& cfg);

std::string run_report(const RunResult& run, const std::vector<FlowSummary>& summaries,
                       const std::vector<StreamVerdict>& verdicts);

std::string comparison_report(const RunResult& sdn, const RunResult& nosdn, const Comparison& cmp,
                              const std::vector<StreamVerdict>& sdn_verdicts,
                              const std::vector<StreamVerdict>& nosdn_verdicts);

/// Writes frames.csv, summary.csv, control_trace.csv, counters.csv and
/// report.txt into `dir` (created if missing). Throws std::runtime_error when
/// a file cannot be written.
void emit_outputs(const RunResult& run, const ScenarioConfig& cfg, const std::filesystem::path& dir);

/// Both runs into dir/sdn and dir/nosdn plus dir/comparison.txt.
void emit_comparison(const RunResult& sdn, const ScenarioConfig& sdn_cfg, const RunResult& nosdn,
                     const ScenarioConfig& nosdn_cfg, const Comparison& cmp, const std::filesystem::path& dir);

}  // namespace tssdn::scenario
