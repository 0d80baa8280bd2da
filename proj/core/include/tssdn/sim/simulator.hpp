#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tssdn/sim/time.hpp"

namespace tssdn::sim {

using NodeId = std::uint32_t;
using PortId = std::uint32_t;

inline constexpr NodeId kNoNode = 0xFFFF'FFFF;

enum class EventKind : std::uint8_t {
  FrameArrival,
  TxComplete,
  Timer,
  ControlDelivery,
};

const char* to_string(EventKind kind);

struct Event {
  SimTime fire_at;
  std::uint64_t seq = 0;  // assigned by the simulator
  NodeId target = kNoNode;
  EventKind kind = EventKind::Timer;
  std::function<void()> action;
};

/// One entry of the dispatch log kept when logging is enabled.
struct DispatchRecord {
  SimTime fire_at;
  std::uint64_t seq;
  NodeId target;
  EventKind kind;

  bool operator==(const DispatchRecord&) const = default;
};

/// Single-threaded discrete-event engine.
///
/// Events are dispatched in (fire_at, seq) order where seq is the insertion
/// counter, so equal-time events run in the order they were scheduled.
class Simulator {
 public:
  SimTime now() const { return now_; }

  /// Throws ModelError when event.fire_at lies in the past.
  std::uint64_t schedule(Event event);

  std::uint64_t schedule(SimTime at, NodeId target, EventKind kind, std::function<void()> action) {
    return schedule(Event{at, 0, target, kind, std::move(action)});
  }

  std::uint64_t schedule_in(SimTime delay, NodeId target, EventKind kind, std::function<void()> action) {
    return schedule(now_ + delay, target, kind, std::move(action));
  }

  /// Dispatch every event with fire_at <= t_end, then advance the clock to t_end.
  void run_until(SimTime t_end);

  std::size_t pending() const { return heap_.size(); }
  std::uint64_t dispatched() const { return dispatched_; }

  /// FNV-1a over every dispatched (fire_at, seq, target, kind) tuple.
  std::uint64_t trace_hash() const { return hash_; }

  void keep_dispatch_log(bool on) { keep_log_ = on; }
  const std::vector<DispatchRecord>& dispatch_log() const { return log_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  void mix(std::uint64_t v);

  SimTime now_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
  bool keep_log_ = false;
  std::vector<Event> heap_;
  std::vector<DispatchRecord> log_;
};

}  // namespace tssdn::sim
