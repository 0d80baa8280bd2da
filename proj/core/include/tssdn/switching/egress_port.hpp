#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>

#include "tssdn/frames/frame.hpp"
#include "tssdn/sim/simulator.hpp"
#include "tssdn/switching/credit_shaper.hpp"

namespace tssdn::switching {

inline constexpr std::size_t kNumQueues = 8;
inline constexpr std::size_t kDefaultQueueCapacity = 100;

enum class EgressMode : std::uint8_t {
  Tsn,   // strict priority over 8 queues, credit-based shaping on reserved classes
  Fifo,  // single FIFO, no shaping (used for fault injection)
};

struct TxRecord {
  std::uint8_t pcp;
  sim::SimTime start;
  sim::SimTime end;
  std::uint64_t bits;
  std::uint64_t uid;
};

/// Egress side of one port: priority queues, per-class credit-based shapers
/// and transmission selection. A frame in transmission is never preempted.
class EgressPort {
 public:
  using Wire = std::function<void(frames::EthernetFrame, sim::SimTime start)>;

  EgressPort(sim::Simulator& sim, sim::NodeId owner, std::int64_t rate_bps, Wire wire,
             std::size_t queue_capacity = kDefaultQueueCapacity);

  EgressPort(const EgressPort&) = delete;
  EgressPort& operator=(const EgressPort&) = delete;

  /// Queues the frame at its PCP (untagged -> 0); an idle port starts
  /// transmitting at the current instant. Returns false if the queue was full.
  bool enqueue(frames::EthernetFrame frame);

  /// Picks and dequeues the next frame: highest non-empty queue whose class is
  /// unshaped or has credit >= 0. Marks the port busy for the frame's
  /// serialization time. Requires the port to be idle.
  std::optional<frames::EthernetFrame> transmission_selection(sim::SimTime now);

  /// Idle slope 0 removes shaping from the class.
  void set_idle_slope(std::uint8_t pcp, std::int64_t idle_slope_bps);
  void set_mode(EgressMode mode) { mode_ = mode; }
  void set_rate(std::int64_t rate_bps);
  void set_tx_observer(std::function<void(const TxRecord&)> obs) { observer_ = std::move(obs); }

  EgressMode mode() const { return mode_; }
  std::int64_t rate_bps() const { return rate_bps_; }
  bool shaped(std::uint8_t pcp) const { return shapers_.contains(pcp); }
  /// Credit brought up to the current simulation time.
  std::optional<CreditState> credit(std::uint8_t pcp);
  bool busy() const { return transmitting_; }
  sim::SimTime tx_busy_until() const { return busy_until_; }

  std::size_t depth(std::uint8_t pcp) const { return queues_.at(pcp).size(); }
  std::size_t max_depth(std::uint8_t pcp) const { return max_depth_.at(pcp); }
  std::uint64_t overflow_drops() const { return overflow_drops_; }
  std::uint64_t transmitted() const { return transmitted_; }

 private:
  std::size_t queue_index(const frames::EthernetFrame& f) const { return mode_ == EgressMode::Fifo ? 0 : f.pcp(); }
  void advance_credits(sim::SimTime now);
  void request_selection();
  void try_start(sim::SimTime now);
  void on_tx_complete();
  void arm_wakeup(sim::SimTime now);

  sim::Simulator& sim_;
  sim::NodeId owner_;
  std::int64_t rate_bps_;
  Wire wire_;
  std::size_t capacity_;
  EgressMode mode_ = EgressMode::Tsn;

  std::array<std::deque<frames::EthernetFrame>, kNumQueues> queues_;
  std::array<std::size_t, kNumQueues> max_depth_{};
  std::map<std::uint8_t, CreditState> shapers_;

  bool transmitting_ = false;
  std::size_t tx_queue_ = 0;
  sim::SimTime busy_until_;
  bool selection_pending_ = false;
  std::optional<sim::SimTime> wakeup_at_;

  std::uint64_t overflow_drops_ = 0;
  std::uint64_t transmitted_ = 0;
  std::function<void(const TxRecord&)> observer_;
};

}  // namespace tssdn::switching
