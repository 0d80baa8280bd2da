#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tssdn/switching/flow_table.hpp"

using namespace tssdn;
using namespace tssdn::switching;
using frames::MacAddress;

namespace {

const MacAddress kTalker = MacAddress::parse("02:00:00:00:00:01");
const MacAddress kGroup = MacAddress::parse("91:E0:F0:00:FE:01");

frames::EthernetFrame tagged(std::uint16_t vid, std::uint8_t pcp) {
  return frames::EthernetFrame::make(kTalker, kGroup, frames::VlanTag::make(vid, pcp), frames::StreamData{}, 150);
}

frames::EthernetFrame untagged() {
  return frames::EthernetFrame::make(kTalker, kGroup, std::nullopt, frames::UdpDatagram{}, 150);
}

}  // namespace

TEST(FlowTable, HigherPriorityWins) {
  FlowTable t;
  FlowMatch any;
  t.install(any, 10, {output_to({1})});
  FlowMatch by_dst;
  by_dst.eth_dst = kGroup;
  t.install(by_dst, 100, {output_to({2})});
  const auto* e = t.lookup(tagged(2, 6), 0);
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->priority, 100);
}

TEST(FlowTable, EqualPriorityTiesGoToTheEarliestInstall) {
  FlowTable t;
  FlowMatch a;
  a.in_port = 0;
  FlowMatch b;
  b.eth_src = kTalker;
  t.install(a, 10, {output_to({1})});
  t.install(b, 10, {output_to({2})});
  EXPECT_EQ(std::get<Output>(t.lookup(tagged(2, 6), 0)->actions[0]).ports, std::vector<sim::PortId>{1});
}

TEST(FlowTable, ReinstallReplacesActionsButKeepsPosition) {
  FlowTable t;
  FlowMatch a;
  a.in_port = 0;
  FlowMatch b;
  b.eth_src = kTalker;
  const auto seq = t.install(a, 10, {output_to({1})}).install_seq;
  t.install(b, 10, {output_to({2})});
  const auto& again = t.install(a, 10, {Drop{}});
  EXPECT_EQ(again.install_seq, seq);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<Drop>(t.lookup(tagged(2, 6), 0)->actions[0]));
}

TEST(FlowTable, VlanFieldsNeverMatchUntaggedFrames) {
  FlowTable t;
  FlowMatch m;
  m.vlan_pcp = 0;
  t.install(m, 10, {output_to({1})});
  EXPECT_EQ(t.lookup(untagged(), 0), nullptr);
  EXPECT_NE(t.lookup(tagged(2, 0), 0), nullptr);
}

TEST(FlowTable, EmptyActionListIsRejected) {
  FlowTable t;
  EXPECT_THROW(t.install({}, 1, {}), std::invalid_argument);
}

TEST(FlowTable, MissActionDefaultsToDrop) {
  FlowTable t;
  EXPECT_EQ(t.miss_action(), MissAction::Drop);
  EXPECT_EQ(match(t, untagged(), 0), nullptr);
  t.set_miss_action(MissAction::ToController);
  EXPECT_EQ(t.miss_action(), MissAction::ToController);
}

TEST(FlowTable, OutputPortsAreSortedAndUnique) {
  EXPECT_EQ(output_to({3, 1, 3, 2}).ports, (std::vector<sim::PortId>{1, 2, 3}));
}

TEST(FlowTable, StreamRuleMatchesOnlyItsStream) {
  FlowTable t;
  FlowMatch m;
  m.in_port = 0;
  m.eth_src = kTalker;
  m.eth_dst = kGroup;
  m.vlan_vid = 2;
  m.vlan_pcp = 6;
  t.install(m, 100, {output_to({1})});
  EXPECT_NE(t.lookup(tagged(2, 6), 0), nullptr);
  EXPECT_EQ(t.lookup(tagged(2, 6), 1), nullptr);
  EXPECT_EQ(t.lookup(tagged(3, 6), 0), nullptr);
  EXPECT_EQ(t.lookup(tagged(2, 5), 0), nullptr);
}

TEST(FlowTable, AgreesWithLinearScanOracle) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10'000; ++i) {
    const auto c = tssdn::testing::random_match_case(rng);
    ASSERT_TRUE(tssdn::testing::match_case_agrees(c)) << "case " << i;
  }
}
