// tssdn-sim: run, compare and check TSSDN scenarios.
//
// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 model assertion (simulator invariant broken).

#include <CLI11.hpp>

#include <future>
#include <iostream>

#include "tssdn/scenario/analysis.hpp"
#include "tssdn/scenario/config.hpp"
#include "tssdn/scenario/report.hpp"
#include "tssdn/scenario/scenario.hpp"
#include "tssdn/scenario/units.hpp"
#include "tssdn/sim/error.hpp"

namespace fs = std::filesystem;
using namespace tssdn;
using namespace tssdn::scenario;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;
constexpr int kModelError = 3;

fs::path default_out(const ScenarioConfig& cfg) { return cfg.output_dir.value_or(fs::path("out") / cfg.name); }

void print_verdicts(const std::string& name, const std::vector<StreamVerdict>& verdicts) {
  for (const auto& [flow, v] : verdicts) {
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << name << "/" << flow << ": " << v.reason;
    if (v.worst) {
      std::cout << " (worst seq " << v.worst->seq << ", " << v.worst->latency_ns() << " ns, bound " << v.bound.count()
                << " ns)";
    }
    std::cout << "\n";
  }
}

bool all_pass(const std::vector<StreamVerdict>& verdicts) {
  for (const auto& v : verdicts)
    if (!v.verdict.pass) return false;
  return true;
}

int cmd_run(const std::string& file, const std::string& until, const std::string& out) {
  const auto cfg = load_config(file);
  RunOptions opts;
  if (!until.empty()) {
    try {
      opts.until = parse_time(until);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--until", 0, "", e.what());
    }
  }
  const auto result = run_scenario(cfg, opts);
  const auto dir = out.empty() ? default_out(cfg) : fs::path(out);
  emit_outputs(result, cfg, dir);
  std::cout << run_report(result, summarize_run(result, cfg), check_run_guarantees(result));
  std::cout << "outputs written to " << dir.string() << "\n";
  return kOk;
}

int cmd_compare(const std::string& sdn_file, const std::string& nosdn_file, const std::string& out) {
  const auto sdn_cfg = load_config(sdn_file);
  const auto nosdn_cfg = load_config(nosdn_file);
  if (!sdn_cfg.sdn) throw ConfigError(sdn_file, 0, "sdn", "--sdn expects a scenario with sdn: true");
  if (nosdn_cfg.sdn) throw ConfigError(nosdn_file, 0, "sdn", "--nosdn expects a scenario with sdn: false");

  // the two runs share nothing mutable
  auto sdn_job = std::async(std::launch::async, [&] { return run_scenario(sdn_cfg); });
  auto nosdn_job = std::async(std::launch::async, [&] { return run_scenario(nosdn_cfg); });
  const auto sdn = sdn_job.get();
  const auto nosdn = nosdn_job.get();

  const auto cmp = compare_runs(sdn, nosdn, sdn_cfg);
  emit_comparison(sdn, sdn_cfg, nosdn, nosdn_cfg, cmp, out);

  const auto sdn_verdicts = check_run_guarantees(sdn);
  const auto nosdn_verdicts = check_run_guarantees(nosdn);
  std::cout << comparison_report(sdn, nosdn, cmp, sdn_verdicts, nosdn_verdicts);
  std::cout << "outputs written to " << out << "\n";
  const bool ok = all_pass(sdn_verdicts) && all_pass(nosdn_verdicts) && cmp.steady_identical() && cmp.setup_delta_matches();
  return ok ? kOk : kCheckFailed;
}

int cmd_check(const std::string& file, bool guarantee) {
  if (!guarantee) throw ConfigError("check", 0, "", "no check selected (use --guarantee)");
  const auto cfg = load_config(file);
  const auto result = run_scenario(cfg);
  const auto verdicts = check_run_guarantees(result);
  print_verdicts(cfg.name, verdicts);
  return all_pass(verdicts) ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator for time-sensitive software-defined networks"};
  app.require_subcommand(1);

  std::string scenario, until, out, sdn_file, nosdn_file;
  bool guarantee = false;

  auto* run = app.add_subcommand("run", "Run one scenario and write per-frame, summary and control-trace files");
  run->add_option("--scenario", scenario, "Scenario file")->required();
  run->add_option("--until", until, "Override the simulated end time (e.g. 150ms)");
  run->add_option("--out", out, "Output directory");

  auto* compare = app.add_subcommand("compare", "Run an SDN scenario and its no-SDN twin and compare them");
  compare->add_option("--sdn", sdn_file, "SDN scenario file")->required();
  compare->add_option("--nosdn", nosdn_file, "No-SDN scenario file")->required();
  compare->add_option("--out", out, "Output directory")->required();

  auto* check = app.add_subcommand("check", "Run a scenario and check it");
  check->add_option("--scenario", scenario, "Scenario file")->required();
  check->add_flag("--guarantee", guarantee, "Check every stream latency against the analytic bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(scenario, until, out);
    if (*compare) return cmd_compare(sdn_file, nosdn_file, out);
    if (*check) return cmd_check(scenario, guarantee);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kModelError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
