#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tssdn/scenario/config.hpp"
#include "tssdn/scenario/report.hpp"
#include "tssdn/scenario/stats.hpp"
#include "tssdn/scenario/units.hpp"

using namespace tssdn;
using namespace tssdn::scenario;
using namespace tssdn::sim::literals;
using metrics::LatencyRecord;

namespace {

const char* kMinimal = R"(name: minimal
sdn: false
run_until: 200ms
clients:
  - {name: a, mac: "02:00:00:00:00:01", ip: 10.0.0.1}
  - {name: b, mac: "02:00:00:00:00:02", ip: 10.0.0.2}
switches:
  - {name: s, ports: 2}
links:
  - {a: "a:0", b: "s:0", rate: 100Mbps}
  - {a: "s:1", b: "b:0", rate: 1Gbps}
)";

std::string with(const std::string& extra) { return std::string(kMinimal) + extra; }

// Expects a ConfigError mentioning `field` on `line`.
void expect_error(const std::string& text, int line, const std::string& field) {
  try {
    parse_config(text, "t.yaml");
    ADD_FAILURE() << "no error for " << field;
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(e.field().find(field), std::string::npos) << e.what();
    EXPECT_EQ(std::string(e.what()).rfind("t.yaml:" + std::to_string(line) + ": ", 0), 0u) << e.what();
  }
}

LatencyRecord rec(const std::string& flow, std::uint64_t seq, std::int64_t send, std::int64_t recv) {
  return {metrics::FlowKind::Stream, flow, seq, sim::SimTime::ns(send), sim::SimTime::ns(recv)};
}

}  // namespace

TEST(Units, Times) {
  EXPECT_EQ(parse_time("125us"), 125_us);
  EXPECT_EQ(parse_time("1.5ms"), 1'500_us);
  EXPECT_EQ(parse_time("0"), 0_ns);
  EXPECT_EQ(parse_time("2s"), 2'000_ms);
  EXPECT_EQ(parse_time("40ns"), 40_ns);
  EXPECT_THROW(parse_time("0.5ns"), std::invalid_argument);
  EXPECT_THROW(parse_time("125"), std::invalid_argument);
  EXPECT_THROW(parse_time("-1ms"), std::invalid_argument);
  EXPECT_THROW(parse_time("ms"), std::invalid_argument);
}

TEST(Units, Rates) {
  EXPECT_EQ(parse_rate("100Mbps"), 100'000'000);
  EXPECT_EQ(parse_rate("1.5Gbps"), 1'500'000'000);
  EXPECT_EQ(parse_rate("64000"), 64'000);
  EXPECT_EQ(parse_rate("10kbps"), 10'000);
  EXPECT_THROW(parse_rate("0Mbps"), std::invalid_argument);
  EXPECT_THROW(parse_rate("fast"), std::invalid_argument);
}

TEST(Config, MinimalDocumentParses) {
  const auto cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.name, "minimal");
  EXPECT_FALSE(cfg.sdn);
  ASSERT_EQ(cfg.links.size(), 2u);
  EXPECT_EQ(cfg.links[1].rate_bps, 1'000'000'000);
  EXPECT_EQ(cfg.links[1].a.node, "s");
  EXPECT_EQ(cfg.links[1].a.port, 1u);
  EXPECT_EQ(cfg.run_until, 200_ms);
}

TEST(Config, ShippedScenariosLoad) {
  for (const char* f : {"case_study_sdn.yaml", "case_study_nosdn.yaml", "fault_injection.yaml"}) {
    EXPECT_NO_THROW(load_config(std::string(TSSDN_SCENARIO_DIR) + "/" + f)) << f;
  }
}

TEST(Config, ErrorsCarryLineNumbers) {
  expect_error(with("bogus: 1\n"), 12, "bogus");
  expect_error(with("analysis: {window_end: 5 parsecs}\n"), 12, "window_end");
  expect_error(std::string(kMinimal) + "  - {a: \"s:1\", b: \"x:0\"}\n", 12, "links");
  expect_error(with("controller: {name: c}\n"), 12, "controller");
  expect_error(std::string(kMinimal).replace(std::string(kMinimal).find("sdn: false"), 10, "sdn: true"), 2, "controller");
}

TEST(Config, ValidationRejectsBadTopologies) {
  std::string dup_mac = kMinimal;
  dup_mac.replace(dup_mac.find("00:02"), 5, "00:01");
  EXPECT_THROW(parse_config(dup_mac), ConfigError);

  std::string port_reuse = kMinimal;
  port_reuse.replace(port_reuse.find("s:1"), 3, "s:0");
  EXPECT_THROW(parse_config(port_reuse), ConfigError);

  std::string out_of_range = kMinimal;
  out_of_range.replace(out_of_range.find("s:1"), 3, "s:7");
  EXPECT_THROW(parse_config(out_of_range), ConfigError);

  std::string disconnected = kMinimal;
  disconnected.erase(disconnected.find("  - {a: \"s:1\""));
  EXPECT_THROW(parse_config(disconnected), ConfigError);

  expect_error(with("sdn: true\n"), 12, "sdn");  // duplicate key
}

TEST(Config, AppsAreValidatedAgainstTheTopology) {
  const std::string talker = R"(apps:
  talkers:
    - {host: a, stream_id: 1, dst_group: "91:E0:F0:00:FE:01", advertise_at: 100ms}
  listeners:
    - {host: b, talker: a, stream_id: 1}
)";
  EXPECT_NO_THROW(parse_config(with(talker)));
  std::string early = talker;
  early.replace(early.find("100ms"), 5, "10ms");
  EXPECT_THROW(parse_config(with(early)), ConfigError);  // before idle_setup
  std::string on_switch = talker;
  on_switch.replace(on_switch.find("host: b"), 7, "host: s");
  EXPECT_THROW(parse_config(with(on_switch)), ConfigError);
  std::string unknown = talker;
  unknown.replace(unknown.find("stream_id: 1}\n", unknown.find("listeners")), 13, "stream_id: 9}");
  EXPECT_THROW(parse_config(with(unknown)), ConfigError);
}

TEST(Config, EmptyAnalysisWindowIsRejected) {
  EXPECT_THROW(parse_config(with("analysis: {window_start: 150ms, window_end: 150ms}\n")), ConfigError);
}

TEST(Stats, SummaryOfThreeSamples) {
  const std::vector<LatencyRecord> rs = {rec("f", 0, 0, 100), rec("f", 1, 10, 210), rec("f", 2, 20, 320)};
  const auto s = summarize_flow(rs, "f", 0_ns, 1_ms);
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.stats->min_ns, 100);
  EXPECT_DOUBLE_EQ(s.stats->mean_ns, 200.0);
  EXPECT_EQ(s.stats->max_ns, 300);
  EXPECT_EQ(s.stats->count, 3u);
}

TEST(Stats, WindowIsHalfOpenOnSendTime) {
  const std::vector<LatencyRecord> rs = {rec("f", 0, 99, 150), rec("f", 1, 100, 400), rec("f", 2, 200, 250)};
  const auto s = summarize_flow(rs, "f", 100_ns, 200_ns);
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.stats->count, 1u);
  EXPECT_EQ(s.stats->max_ns, 300);
  EXPECT_TRUE(summarize_flow(rs, "f", 300_ns, 400_ns).empty());
}

TEST(Stats, GuaranteeUsesInclusiveBound) {
  const auto bound = 750'000;  // three Class A egress ports at 250 us
  std::vector<LatencyRecord> rs = {rec("s", 0, 0, bound)};
  EXPECT_TRUE(check_guarantee(rs, srp::class_a(), 3).pass);
  rs.push_back(rec("s", 1, 1, bound + 2));
  const auto v = check_guarantee(rs, srp::class_a(), 3);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.violations, 1u);
  EXPECT_EQ(v.worst->seq, 1u);
}

TEST(Stats, NoStreamFramesFailsTheGuarantee) {
  const auto v = check_guarantee({}, srp::class_a(), 3);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.reason, "no stream frames observed");
}

TEST(Report, CsvHeadersAreExact) {
  std::ostringstream frames_out, summary_out, trace_out;
  write_frames_csv(frames_out, {rec("f", 7, 1000, 1500)});
  EXPECT_EQ(frames_out.str(), "flow,seq,send_ns,recv_ns,latency_ns\nf,7,1000,1500,500\n");
  write_summary_csv(summary_out, {summarize_flow({}, "f", 0_ns, 5_ns)});
  EXPECT_EQ(summary_out.str(), "flow,min_ns,mean_ns,max_ns,window_start_ns,window_end_ns\nf,empty,empty,empty,0,5\n");
  write_control_trace_csv(trace_out, {{25_us, metrics::ControlDir::ToSwitch, "switch0", "Hello", 1}});
  EXPECT_EQ(trace_out.str(), "time_ns,dir,switch,kind,xid\n25000,to_switch,switch0,Hello,1\n");
}

TEST(Report, UnwritableOutputDirectoryThrows) {
  const auto cfg = parse_config(kMinimal);
  RunResult r;
  const auto blocker = std::filesystem::temp_directory_path() / "tssdn_blocker_file";
  std::ofstream(blocker) << "x";
  EXPECT_THROW(emit_outputs(r, cfg, blocker / "out"), std::runtime_error);
  std::filesystem::remove(blocker);
}
