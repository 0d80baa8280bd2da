#include "tssdn/switching/egress_port.hpp"

#include "tssdn/sim/error.hpp"
#include "tssdn/sim/network.hpp"

namespace tssdn::switching {

EgressPort::EgressPort(sim::Simulator& sim, sim::NodeId owner, std::int64_t rate_bps, Wire wire,
                       std::size_t queue_capacity)
    : sim_(sim), owner_(owner), rate_bps_(rate_bps), wire_(std::move(wire)), capacity_(queue_capacity) {
  if (rate_bps <= 0) throw std::invalid_argument("port rate must be positive");
  if (queue_capacity == 0) throw std::invalid_argument("queue capacity must be positive");
}

void EgressPort::set_rate(std::int64_t rate_bps) {
  if (rate_bps <= 0) throw std::invalid_argument("port rate must be positive");
  advance_credits(sim_.now());
  rate_bps_ = rate_bps;
  for (auto& [_, cs] : shapers_) cs.send_slope = cs.idle_slope - rate_bps_;
}

void EgressPort::set_idle_slope(std::uint8_t pcp, std::int64_t idle_slope_bps) {
  if (pcp >= kNumQueues) throw std::invalid_argument("pcp out of range");
  const auto now = sim_.now();
  advance_credits(now);
  if (idle_slope_bps == 0) {
    shapers_.erase(pcp);
  } else if (auto it = shapers_.find(pcp); it != shapers_.end()) {
    const auto fresh = CreditState::make(idle_slope_bps, rate_bps_, now);
    it->second.idle_slope = fresh.idle_slope;
    it->second.send_slope = fresh.send_slope;
  } else {
    shapers_.emplace(pcp, CreditState::make(idle_slope_bps, rate_bps_, now));
  }
  request_selection();
}

std::optional<CreditState> EgressPort::credit(std::uint8_t pcp) {
  advance_credits(sim_.now());
  auto it = shapers_.find(pcp);
  if (it == shapers_.end()) return std::nullopt;
  return it->second;
}

void EgressPort::advance_credits(sim::SimTime now) {
  for (auto& [pcp, cs] : shapers_) {
    update_credit(cs, now, transmitting_ && tx_queue_ == pcp, !queues_[pcp].empty());
  }
}

bool EgressPort::enqueue(frames::EthernetFrame frame) {
  const auto now = sim_.now();
  advance_credits(now);
  const auto q = queue_index(frame);
  if (queues_[q].size() >= capacity_) {
    ++overflow_drops_;
    return false;
  }
  queues_[q].push_back(std::move(frame));
  max_depth_[q] = std::max(max_depth_[q], queues_[q].size());
  request_selection();
  return true;
}

std::optional<frames::EthernetFrame> EgressPort::transmission_selection(sim::SimTime now) {
  if (transmitting_ || now < busy_until_) throw ModelError("transmission selection on a busy port");
  std::optional<std::size_t> chosen;
  if (mode_ == EgressMode::Fifo) {
    if (!queues_[0].empty()) chosen = 0;
  } else {
    for (std::size_t i = kNumQueues; i-- > 0;) {
      if (queues_[i].empty()) continue;
      auto it = shapers_.find(static_cast<std::uint8_t>(i));
      if (it != shapers_.end() && it->second.credit_nbits < 0) continue;
      chosen = i;
      break;
    }
  }
  if (!chosen) return std::nullopt;

  frames::EthernetFrame frame = std::move(queues_[*chosen].front());
  queues_[*chosen].pop_front();
  transmitting_ = true;
  tx_queue_ = *chosen;
  busy_until_ = now + sim::serialization_time(frame, rate_bps_);
  return frame;
}

void EgressPort::try_start(sim::SimTime now) {
  if (transmitting_) return;
  advance_credits(now);
  auto frame = transmission_selection(now);
  if (!frame) {
    arm_wakeup(now);
    return;
  }
  ++transmitted_;
  if (observer_) {
    observer_(TxRecord{frame->pcp(), now, busy_until_, frames::wire_bits(*frame), frame->uid});
  }
  sim_.schedule(busy_until_, owner_, sim::EventKind::TxComplete, [this] { on_tx_complete(); });
  wire_(std::move(*frame), now);
}

void EgressPort::on_tx_complete() {
  const auto now = sim_.now();
  advance_credits(now);
  transmitting_ = false;
  // applies the empty-queue reset for the class that just finished
  advance_credits(now);
  request_selection();
}

// Selection runs as its own event at the current instant. Anything else due at
// this instant was scheduled earlier and is dispatched first, so every frame
// that arrives "now" competes in the selection regardless of event order.
void EgressPort::request_selection() {
  if (transmitting_ || selection_pending_) return;
  selection_pending_ = true;
  sim_.schedule(sim_.now(), owner_, sim::EventKind::Timer, [this] {
    selection_pending_ = false;
    try_start(sim_.now());
  });
}

void EgressPort::arm_wakeup(sim::SimTime now) {
  if (mode_ == EgressMode::Fifo) return;
  std::optional<sim::SimTime> earliest;
  for (const auto& [pcp, cs] : shapers_) {
    if (queues_[pcp].empty() || cs.credit_nbits >= 0) continue;
    const auto t = now + time_to_zero_credit(cs);
    if (!earliest || t < *earliest) earliest = t;
  }
  if (!earliest) return;
  if (wakeup_at_ && *wakeup_at_ <= *earliest && *wakeup_at_ >= now) return;
  wakeup_at_ = *earliest;
  sim_.schedule(*earliest, owner_, sim::EventKind::Timer, [this, at = *earliest] {
    if (wakeup_at_ == at) wakeup_at_.reset();
    request_selection();
  });
}

}  // namespace tssdn::switching
