#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tssdn/hosts/host.hpp"

namespace tssdn::hosts {

struct TalkerConfig {
  frames::StreamDescriptor stream;
  std::uint32_t frame_bytes = 150;
  sim::SimTime advertise_at;
  sim::SimTime listener_timeout = sim::SimTime::ms(10);
  std::optional<std::uint64_t> count;  // unlimited when empty
  std::string label = "stream";
};

/// Advertises one stream and, once a listener is ready, sends one frame per
/// interval. The first frame leaves one interval after the ListenerReady.
class Talker : public HostApp {
 public:
  Talker(Host& host, TalkerConfig config);

  void start() override;
  bool on_frame(const frames::EthernetFrame& frame) override;

  const TalkerConfig& config() const { return config_; }
  std::optional<sim::SimTime> listener_ready_at() const { return ready_at_; }
  std::optional<sim::SimTime> first_send() const { return first_send_; }
  std::uint64_t sent() const { return seq_; }

 private:
  void advertise();
  void emit();

  TalkerConfig config_;
  std::uint16_t flow_;
  std::optional<sim::SimTime> ready_at_;
  std::optional<sim::SimTime> first_send_;
  std::uint64_t seq_ = 0;
};

/// Subscribes to one stream and records per-frame latency.
class Listener : public HostApp {
 public:
  Listener(Host& host, srp::StreamId stream);

  bool on_frame(const frames::EthernetFrame& frame) override;

  bool ready_sent() const { return ready_sent_.has_value(); }
  std::optional<sim::SimTime> ready_sent_at() const { return ready_sent_; }
  std::uint64_t received() const { return received_; }
  std::uint64_t seq_violations() const { return seq_violations_; }

 private:
  srp::StreamId stream_;
  std::optional<sim::SimTime> ready_sent_;
  std::optional<std::uint64_t> last_seq_;
  std::uint64_t received_ = 0;
  std::uint64_t seq_violations_ = 0;
};

struct UdpSourceConfig {
  frames::ProtocolAddress dst;
  std::uint32_t frame_bytes = 1000;
  sim::SimTime send_interval = sim::SimTime::us(100);
  sim::SimTime start_at;
  sim::SimTime start_offset;  // gap between ARP resolution and the first datagram
  std::optional<std::uint64_t> count;
  sim::SimTime arp_timeout = sim::SimTime::ms(1);
  int arp_retries = 3;
  std::string label = "udp";
};

/// Resolves the destination by ARP, then sends datagrams at a fixed rate.
class UdpSource : public HostApp {
 public:
  UdpSource(Host& host, UdpSourceConfig config);

  void start() override;
  bool on_frame(const frames::EthernetFrame& frame) override;

  const UdpSourceConfig& config() const { return config_; }
  std::optional<sim::SimTime> resolved_at() const { return resolved_at_; }
  std::optional<sim::SimTime> first_send() const { return first_send_; }
  std::uint64_t sent() const { return seq_; }
  int arp_attempts() const { return attempts_; }

 private:
  void request();
  void emit();

  UdpSourceConfig config_;
  std::uint16_t flow_;
  std::optional<frames::MacAddress> resolved_;
  std::optional<sim::SimTime> resolved_at_;
  std::optional<sim::SimTime> first_send_;
  std::uint64_t seq_ = 0;
  int attempts_ = 0;
};

/// Records latency of datagrams addressed to its host.
class UdpSink : public HostApp {
 public:
  explicit UdpSink(Host& host) : HostApp(host) {}

  bool on_frame(const frames::EthernetFrame& frame) override;

  std::uint64_t received() const { return received_; }

 private:
  std::uint64_t received_ = 0;
};

}  // namespace tssdn::hosts
