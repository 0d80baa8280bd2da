#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "tssdn/sim/error.hpp"
#include "tssdn/sim/simulator.hpp"

using namespace tssdn;
using namespace tssdn::sim::literals;
using sim::EventKind;
using sim::SimTime;
using sim::Simulator;

TEST(SimTime, ExactArithmeticAndUnits) {
  EXPECT_EQ((1_ms).count(), 1'000'000);
  EXPECT_EQ((125_us + 3_ns).count(), 125'003);
  EXPECT_EQ((2_s - 1_ms).count(), 1'999'000'000);
  EXPECT_EQ((125_us * 4), 500_us);
  EXPECT_LT(1_ns, 1_us);
}

TEST(SimTime, NegativeValuesAreRejected) {
  EXPECT_THROW(SimTime::ns(-1), std::out_of_range);
  EXPECT_THROW(1_us - 2_us, std::out_of_range);
}

TEST(SimTime, Formatting) {
  EXPECT_EQ((250_us).to_string(), "250us");
  EXPECT_EQ((100_ms).to_string(), "100ms");
  EXPECT_EQ(SimTime::ns(1500).to_string(), "1500ns");
}

TEST(Simulator, EqualTimesDispatchInInsertionOrder) {
  Simulator s;
  std::string order;
  s.schedule(5_us, 0, EventKind::Timer, [&] { order += 'A'; });
  s.schedule(5_us, 0, EventKind::Timer, [&] { order += 'B'; });
  s.schedule(1_us, 0, EventKind::Timer, [&] { order += 'C'; });
  s.run_until(10_us);
  EXPECT_EQ(order, "CAB");
  EXPECT_EQ(s.now(), 10_us);
}

TEST(Simulator, ZeroTimeEventRunsBeforeLaterOnes) {
  Simulator s;
  std::string order;
  s.schedule(1_ns, 0, EventKind::Timer, [&] { order += 'L'; });
  s.schedule(0_ns, 0, EventKind::Timer, [&] { order += 'Z'; });
  s.run_until(1_ns);
  EXPECT_EQ(order, "ZL");
}

TEST(Simulator, SchedulingInThePastIsAModelError) {
  Simulator s;
  s.run_until(10_us);
  EXPECT_THROW(s.schedule(SimTime::ns(9'999), 0, EventKind::Timer, [] {}), ModelError);
  EXPECT_NO_THROW(s.schedule(10_us, 0, EventKind::Timer, [] {}));
}

TEST(Simulator, RunUntilStopsAtTheHorizonAndKeepsLaterEvents) {
  Simulator s;
  int fired = 0;
  s.schedule(5_us, 0, EventKind::Timer, [&] { ++fired; });
  s.schedule(15_us, 0, EventKind::Timer, [&] { ++fired; });
  s.run_until(10_us);
  EXPECT_EQ(fired, 1);
  EXPECT_EQ(s.pending(), 1u);
  EXPECT_EQ(s.now(), 10_us);
  s.run_until(20_us);
  EXPECT_EQ(fired, 2);
}

TEST(Simulator, EventsScheduledAtNowFromAHandlerStillRun) {
  Simulator s;
  std::string order;
  s.schedule(1_us, 0, EventKind::Timer, [&] {
    order += 'a';
    s.schedule_in(0_ns, 0, EventKind::Timer, [&] { order += 'c'; });
  });
  s.schedule(1_us, 0, EventKind::Timer, [&] { order += 'b'; });
  s.run_until(1_us);
  EXPECT_EQ(order, "abc");
}

// Randomized schedules against a stable sort of (time, insertion index).
TEST(Simulator, MatchesSortedListOracle) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 200; ++round) {
    Simulator s;
    std::vector<std::pair<std::int64_t, int>> expected;
    std::vector<int> got;
    const int n = std::uniform_int_distribution<int>(1, 300)(rng);
    for (int i = 0; i < n; ++i) {
      const auto t = std::uniform_int_distribution<std::int64_t>(0, 50)(rng);  // many ties
      expected.emplace_back(t, i);
      s.schedule(SimTime::ns(t), 0, EventKind::Timer, [&got, i] { got.push_back(i); });
    }
    std::stable_sort(expected.begin(), expected.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    s.run_until(SimTime::ns(50));
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) ASSERT_EQ(got[k], expected[k].second) << "round " << round;
  }
}

TEST(Simulator, DispatchHashIsReproducible) {
  auto run = [] {
    Simulator s;
    for (int i = 0; i < 100; ++i) s.schedule(SimTime::ns(i % 7), static_cast<sim::NodeId>(i % 3), EventKind::Timer, [] {});
    s.run_until(1_us);
    return std::make_tuple(s.trace_hash(), s.dispatched());
  };
  EXPECT_EQ(run(), run());
  EXPECT_EQ(std::get<1>(run()), 100u);
}

TEST(Simulator, DispatchLogRecordsOrder) {
  Simulator s;
  s.keep_dispatch_log(true);
  s.schedule(2_us, 7, EventKind::FrameArrival, [] {});
  s.schedule(1_us, 3, EventKind::ControlDelivery, [] {});
  s.run_until(5_us);
  ASSERT_EQ(s.dispatch_log().size(), 2u);
  EXPECT_EQ(s.dispatch_log()[0].target, 3u);
  EXPECT_EQ(s.dispatch_log()[1].kind, EventKind::FrameArrival);
}
