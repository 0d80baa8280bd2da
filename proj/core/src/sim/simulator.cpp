#include "tssdn/sim/simulator.hpp"

#include <algorithm>

#include "tssdn/sim/error.hpp"

namespace tssdn::sim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::FrameArrival: return "frame_arrival";
    case EventKind::TxComplete: return "tx_complete";
    case EventKind::Timer: return "timer";
    case EventKind::ControlDelivery: return "control_delivery";
  }
  return "?";
}

std::uint64_t Simulator::schedule(Event event) {
  if (event.fire_at < now_) {
    throw ModelError("event scheduled in the past: at " + event.fire_at.to_string() + ", now " + now_.to_string());
  }
  event.seq = next_seq_++;
  const auto seq = event.seq;
  heap_.push_back(std::move(event));
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return seq;
}

void Simulator::mix(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    hash_ ^= (v >> (i * 8)) & 0xFF;
    hash_ *= 0x100000001b3ULL;
  }
}

void Simulator::run_until(SimTime t_end) {
  while (!heap_.empty() && heap_.front().fire_at <= t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Event ev = std::move(heap_.back());
    heap_.pop_back();

    now_ = ev.fire_at;
    ++dispatched_;
    mix(static_cast<std::uint64_t>(ev.fire_at.count()));
    mix(ev.seq);
    mix(ev.target);
    mix(static_cast<std::uint64_t>(ev.kind));
    if (keep_log_) log_.push_back({ev.fire_at, ev.seq, ev.target, ev.kind});

    if (ev.action) ev.action();
  }
  if (t_end > now_) now_ = t_end;
}

}  // namespace tssdn::sim
