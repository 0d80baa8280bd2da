#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tssdn/frames/frame.hpp"
#include "tssdn/metrics/sink.hpp"
#include "tssdn/sim/network.hpp"
#include "tssdn/srp/reservation.hpp"
#include "tssdn/switching/egress_port.hpp"

namespace tssdn::hosts {

struct HostConfig {
  std::string name;
  frames::MacAddress mac;
  frames::ProtocolAddress ip;
  sim::SimTime processing_delay;  // applied to every received frame
  std::size_t queue_capacity = switching::kDefaultQueueCapacity;
  double admission_fraction = srp::kDefaultAdmissionFraction;
  bool shaper_disabled = false;
};

struct HostCounters {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::uint64_t arp_replies_sent = 0;
  std::uint64_t unhandled = 0;
  std::uint64_t nic_overflow = 0;
};

class Host;

/// Application running on a host. Apps see every frame the host accepts.
class HostApp {
 public:
  virtual ~HostApp() = default;
  virtual void start() {}
  /// Returns true if the frame was consumed.
  virtual bool on_frame(const frames::EthernetFrame& frame) = 0;

 protected:
  explicit HostApp(Host& host) : host_(host) {}
  Host& host() const { return host_; }

 private:
  Host& host_;
};

/// End station with a single port. Its NIC has the same egress model as a
/// switch port, so a talker's stream is shaped at the first scheduled port.
class Host : public sim::Node {
 public:
  Host(sim::Simulator& sim, HostConfig config, metrics::MetricsSink* sink = nullptr);

  std::size_t port_count() const override { return 1; }
  void receive(sim::PortId port, frames::EthernetFrame frame) override;
  void on_added() override;

  template <class App, class... Args>
  App& add_app(Args&&... args) {
    auto app = std::make_unique<App>(*this, std::forward<Args>(args)...);
    App& ref = *app;
    apps_.push_back(std::move(app));
    return ref;
  }

  /// Starts every app; call once after the topology is built.
  void start();

  /// Assigns a frame uid and queues the frame on the NIC.
  void send(frames::EthernetFrame frame);

  void set_port_rate(std::int64_t rate_bps);

  sim::Simulator& sim() const { return sim_; }
  metrics::MetricsSink* sink() const { return sink_; }
  const HostConfig& config() const { return config_; }
  const frames::MacAddress& mac() const { return config_.mac; }
  frames::ProtocolAddress ip() const { return config_.ip; }
  switching::EgressPort& nic() { return *nic_; }
  srp::PortBudget& budget() { return budget_; }
  HostCounters counters() const;

  void warn(const std::string& message) const;
  void trace(metrics::TraceKind kind, std::string stream = {}, std::string detail = {}) const;

 private:
  void handle(const frames::EthernetFrame& frame);

  sim::Simulator& sim_;
  HostConfig config_;
  metrics::MetricsSink* sink_;
  std::unique_ptr<switching::EgressPort> nic_;
  srp::PortBudget budget_;
  std::vector<std::unique_ptr<HostApp>> apps_;
  HostCounters counters_;
};

}  // namespace tssdn::hosts
