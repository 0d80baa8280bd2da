#include <gtest/gtest.h>

#include "tssdn/sim/error.hpp"
#include "tssdn/sim/network.hpp"

using namespace tssdn;
using namespace tssdn::sim::literals;
using sim::SimTime;

namespace {

// bits * 1e9 / rate, rounded up, computed independently
std::int64_t ser_ns(std::int64_t frame_bytes, std::int64_t rate_bps) {
  const std::int64_t bits = (std::max<std::int64_t>(frame_bytes, 64) + 20) * 8;
  return (bits * 1'000'000'000 + rate_bps - 1) / rate_bps;
}

struct Sink : sim::Node {
  explicit Sink(std::string n, std::size_t ports = 1) : sim::Node(std::move(n)), ports_(ports) {}
  std::size_t port_count() const override { return ports_; }
  void receive(sim::PortId port, frames::EthernetFrame f) override { got.push_back({port, f.uid}); }
  std::size_t ports_;
  std::vector<std::pair<sim::PortId, std::uint64_t>> got;
};

frames::EthernetFrame frame(std::uint32_t bytes) {
  return frames::EthernetFrame::make(frames::MacAddress::parse("02:00:00:00:00:01"), frames::MacAddress::broadcast(),
                                     std::nullopt, frames::UdpDatagram{}, bytes);
}

}  // namespace

TEST(Serialization, MinimumAndMaximumFramesAt100Mbps) {
  EXPECT_EQ(sim::serialization_time(frame(64), 100'000'000).count(), ser_ns(64, 100'000'000));
  EXPECT_EQ(sim::serialization_time(frame(64), 100'000'000), 6'720_ns);
  EXPECT_EQ(sim::serialization_time(frame(1522), 100'000'000).count(), ser_ns(1522, 100'000'000));
  EXPECT_EQ(sim::serialization_time(frame(1522), 100'000'000), 123'360_ns);
}

TEST(Serialization, RoundsUpToWholeNanoseconds) {
  // 672 bits at 1 Gbit/s = 672 ns exactly; at 3 Mbit/s = 224000 ns exactly; at 7 Mbit/s not exact
  EXPECT_EQ(sim::serialization_time(672, 1'000'000'000), 672_ns);
  EXPECT_EQ(sim::serialization_time(672, 7'000'000).count(), ser_ns(64, 7'000'000));
}

TEST(Network, ArrivalAfterSerializationPlusPropagation) {
  sim::Simulator s;
  sim::Network net(s);
  auto& a = net.emplace_node<Sink>("a");
  auto& b = net.emplace_node<Sink>("b");
  const auto link = net.connect({a.id(), 0}, {b.id(), 0}, {100'000'000, 2_us});
  auto f = frame(150);
  f.uid = 9;
  const auto at = net.transmit(link, sim::Direction::AtoB, f, 1_us);
  EXPECT_EQ(at.count(), 1'000 + ser_ns(150, 100'000'000) + 2'000);
  s.run_until(at - 1_ns);
  EXPECT_TRUE(b.got.empty());
  s.run_until(at);
  ASSERT_EQ(b.got.size(), 1u);
  EXPECT_EQ(b.got[0].second, 9u);
}

TEST(Network, DirectionsAreIndependentButEachCarriesOneFrame) {
  sim::Simulator s;
  sim::Network net(s);
  auto& a = net.emplace_node<Sink>("a");
  auto& b = net.emplace_node<Sink>("b");
  const auto link = net.connect({a.id(), 0}, {b.id(), 0});
  net.transmit(link, sim::Direction::AtoB, frame(1000), 0_ns);
  EXPECT_NO_THROW(net.transmit(link, sim::Direction::BtoA, frame(1000), 0_ns));
  EXPECT_THROW(net.transmit(link, sim::Direction::AtoB, frame(64), 1_us), ModelError);
  EXPECT_NO_THROW(net.transmit(link, sim::Direction::AtoB, frame(64), SimTime::ns(ser_ns(1000, 100'000'000))));
}

TEST(Network, ConnectValidatesEndpoints) {
  sim::Simulator s;
  sim::Network net(s);
  auto& a = net.emplace_node<Sink>("a", 2);
  auto& b = net.emplace_node<Sink>("b");
  EXPECT_THROW(net.connect({a.id(), 2}, {b.id(), 0}), std::invalid_argument);
  EXPECT_THROW(net.connect({a.id(), 0}, {99, 0}), std::invalid_argument);
  EXPECT_THROW(net.connect({a.id(), 0}, {b.id(), 0}, {0, {}}), std::invalid_argument);
  net.connect({a.id(), 0}, {b.id(), 0});
  EXPECT_THROW(net.connect({a.id(), 1}, {b.id(), 0}), std::invalid_argument);
  EXPECT_EQ(net.find("b"), &b);
  EXPECT_EQ(net.find("nope"), nullptr);
  EXPECT_TRUE(net.attachment(a.id(), 0).has_value());
  EXPECT_FALSE(net.attachment(a.id(), 1).has_value());
}
