#include <benchmark/benchmark.h>

#include <random>

#include "tssdn/scenario/config.hpp"
#include "tssdn/scenario/scenario.hpp"
#include "tssdn/sim/simulator.hpp"
#include "tssdn/switching/flow_table.hpp"

using namespace tssdn;

namespace {

frames::MacAddress mac(std::uint64_t v) {
  return frames::MacAddress{{0x02, 0, 0, static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
                             static_cast<std::uint8_t>(v)}};
}

void BM_FlowTableLookup(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  switching::FlowTable table;
  for (std::uint64_t i = 0; i < n; ++i) {
    switching::FlowMatch m;
    m.eth_dst = mac(i);
    m.in_port = static_cast<sim::PortId>(i % 4);
    table.install(m, static_cast<int>(i % 3), {switching::output_to({1})});
  }
  std::mt19937_64 rng(1);
  std::vector<frames::EthernetFrame> probes;
  for (int i = 0; i < 256; ++i)
    probes.push_back(frames::EthernetFrame::make(mac(9999), mac(rng() % (n + n / 4 + 1)), std::nullopt,
                                                 frames::UdpDatagram{}, 100));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table.lookup(probes[k++ % probes.size()], static_cast<sim::PortId>(k % 4)));
  }
}
BENCHMARK(BM_FlowTableLookup)->Arg(8)->Arg(64)->Arg(512);

void BM_SimulatorDispatch(benchmark::State& state) {
  for (auto _ : state) {
    sim::Simulator s;
    std::uint64_t fired = 0;
    std::function<void()> tick = [&] {
      if (++fired < 100'000) s.schedule_in(sim::SimTime::ns(static_cast<sim::SimTime::rep>(fired % 7)), 0,
                                           sim::EventKind::Timer, tick);
    };
    s.schedule(sim::SimTime{}, 0, sim::EventKind::Timer, tick);
    s.run_until(sim::SimTime::s(1));
    benchmark::DoNotOptimize(fired);
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_SimulatorDispatch)->Unit(benchmark::kMillisecond);

void BM_CaseStudyRun(benchmark::State& state) {
  const auto cfg = scenario::load_config(std::string(TSSDN_SCENARIO_DIR) +
                                         (state.range(0) ? "/case_study_sdn.yaml" : "/case_study_nosdn.yaml"));
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto r = scenario::run_scenario(cfg);
    events += r.events_dispatched;
    benchmark::DoNotOptimize(r.dispatch_hash);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_CaseStudyRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
