// Independent reference implementations shared by unit and acceptance tests.
// Nothing here calls into the code it is used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tssdn/frames/frame.hpp"
#include "tssdn/switching/egress_port.hpp"
#include "tssdn/switching/flow_table.hpp"

namespace tssdn::testing {

// ---- flow matching ----------------------------------------------------------

struct OracleRule {
  std::optional<std::uint32_t> in_port;
  std::optional<std::uint64_t> dst;
  std::optional<std::uint64_t> src;
  std::optional<int> vid;
  std::optional<int> pcp;
  int priority = 0;
  int action_tag = 0;  // stands in for the action list
};

struct OracleFrame {
  std::uint32_t in_port = 0;
  std::uint64_t dst = 0;
  std::uint64_t src = 0;
  std::optional<int> vid;  // untagged when empty
  int pcp = 0;
};

inline bool oracle_field_ok(const OracleRule& r, const OracleFrame& f) {
  if (r.in_port && *r.in_port != f.in_port) return false;
  if (r.dst && *r.dst != f.dst) return false;
  if (r.src && *r.src != f.src) return false;
  if (r.vid && (!f.vid || *r.vid != *f.vid)) return false;
  if (r.pcp && (!f.vid || *r.pcp != f.pcp)) return false;
  return true;
}

/// Rule list in installation order; re-installing the same match and priority
/// overwrites the action in place.
class OracleTable {
 public:
  void install(const OracleRule& r) {
    for (auto& e : rules_) {
      if (e.in_port == r.in_port && e.dst == r.dst && e.src == r.src && e.vid == r.vid && e.pcp == r.pcp &&
          e.priority == r.priority) {
        e.action_tag = r.action_tag;
        return;
      }
    }
    rules_.push_back(r);
  }

  /// Linear scan: highest priority wins, earliest installed among equals.
  std::optional<int> lookup(const OracleFrame& f) const {
    const OracleRule* best = nullptr;
    for (const auto& r : rules_) {
      if (!oracle_field_ok(r, f)) continue;
      if (!best || r.priority > best->priority) best = &r;
    }
    if (!best) return std::nullopt;
    return best->action_tag;
  }

 private:
  std::vector<OracleRule> rules_;
};

inline frames::MacAddress mac_from(std::uint64_t v) {
  return frames::MacAddress{{0x02, 0, 0, 0, static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)}};
}

struct MatchCase {
  std::vector<OracleRule> rules;
  OracleFrame frame;
};

/// Small value domains so that overlaps, ties and replacements are frequent.
inline MatchCase random_match_case(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto maybe = [&](int pct) { return pick(0, 99) < pct; };
  MatchCase c;
  const int n = pick(0, 12);
  for (int i = 0; i < n; ++i) {
    OracleRule r;
    if (maybe(50)) r.in_port = static_cast<std::uint32_t>(pick(0, 3));
    if (maybe(50)) r.dst = static_cast<std::uint64_t>(pick(1, 4));
    if (maybe(50)) r.src = static_cast<std::uint64_t>(pick(1, 4));
    if (maybe(35)) r.vid = pick(1, 3);
    if (maybe(35)) r.pcp = pick(0, 7);
    r.priority = pick(0, 3) * 10;
    r.action_tag = pick(0, 3);
    c.rules.push_back(r);
  }
  c.frame.in_port = static_cast<std::uint32_t>(pick(0, 3));
  c.frame.dst = static_cast<std::uint64_t>(pick(1, 4));
  c.frame.src = static_cast<std::uint64_t>(pick(1, 4));
  if (maybe(60)) c.frame.vid = pick(1, 3);
  c.frame.pcp = pick(0, 7);
  return c;
}

inline switching::FlowMatch to_match(const OracleRule& r) {
  switching::FlowMatch m;
  m.in_port = r.in_port;
  if (r.dst) m.eth_dst = mac_from(*r.dst);
  if (r.src) m.eth_src = mac_from(*r.src);
  if (r.vid) m.vlan_vid = static_cast<std::uint16_t>(*r.vid);
  if (r.pcp) m.vlan_pcp = static_cast<std::uint8_t>(*r.pcp);
  return m;
}

/// Encodes an action tag as a single Output action on port 100 + tag.
inline std::vector<switching::FlowAction> tag_actions(int tag) {
  return {switching::output_to({static_cast<sim::PortId>(100 + tag)})};
}

inline std::optional<int> tag_of(const switching::FlowEntry* e) {
  if (!e) return std::nullopt;
  return static_cast<int>(std::get<switching::Output>(e->actions.front()).ports.front()) - 100;
}

inline frames::EthernetFrame to_frame(const OracleFrame& f) {
  std::optional<frames::VlanTag> tag;
  if (f.vid) tag = frames::VlanTag::make(static_cast<std::uint16_t>(*f.vid), static_cast<std::uint8_t>(f.pcp));
  frames::UdpDatagram d;
  return frames::EthernetFrame::make(mac_from(f.src), mac_from(f.dst), tag, d, 100);
}

/// Runs one case through both implementations; true when they agree.
inline bool match_case_agrees(const MatchCase& c) {
  OracleTable oracle;
  switching::FlowTable table;
  for (const auto& r : c.rules) {
    oracle.install(r);
    table.install(to_match(r), r.priority, tag_actions(r.action_tag));
  }
  return oracle.lookup(c.frame) == tag_of(table.lookup(to_frame(c.frame), c.frame.in_port));
}

// ---- credit-based shaping ---------------------------------------------------

struct CbsPattern {
  std::int64_t rate_bps = 100'000'000;
  std::int64_t idle_slope_bps = 0;
  sim::SimTime interval = sim::SimTime::us(125);
  struct Arrival {
    sim::SimTime at;
    std::uint8_t pcp;
    std::uint32_t bytes;
  };
  std::vector<Arrival> arrivals;  // sorted by time
  sim::SimTime horizon;
};

/// Shaped class pcp 6 at a random idle slope, best-effort pcp 0 background.
/// Arrivals come in bursts to exercise credit build-up and the empty-queue reset.
inline CbsPattern random_cbs_pattern(std::mt19937_64& rng) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  CbsPattern p;
  p.rate_bps = pick(0, 1) ? 100'000'000 : 1'000'000'000;
  p.idle_slope_bps = p.rate_bps / 100 * pick(5, 75);
  p.interval = sim::SimTime::us(pick(0, 1) ? 125 : 250);
  p.horizon = p.interval * 60;
  const auto max_shaped = static_cast<std::uint32_t>(pick(64, 1522));
  const auto bg_bytes_hi = static_cast<std::uint32_t>(pick(64, 1522));
  for (sim::SimTime t; t < p.horizon;) {
    const int burst = static_cast<int>(pick(1, 6));
    for (int i = 0; i < burst; ++i)
      p.arrivals.push_back({t, 6, static_cast<std::uint32_t>(pick(64, max_shaped))});
    t = t + sim::SimTime::ns(pick(1, 3 * p.interval.count()));
  }
  const auto bg_gap = pick(1'000, 200'000);
  for (sim::SimTime t = sim::SimTime::ns(pick(0, 50'000)); t < p.horizon;) {
    p.arrivals.push_back({t, 0, static_cast<std::uint32_t>(pick(64, bg_bytes_hi))});
    t = t + sim::SimTime::ns(pick(1, 2 * bg_gap));
  }
  std::stable_sort(p.arrivals.begin(), p.arrivals.end(), [](const auto& a, const auto& b) { return a.at < b.at; });
  return p;
}

struct CbsObservation {
  std::vector<switching::TxRecord> tx;
  std::int64_t max_frame_bits = 0;
  std::size_t empty_queue_checks = 0;
  std::size_t positive_on_empty = 0;  // shaped queue empty yet credit > 0
};

/// Drives one EgressPort through the pattern and records what it transmitted.
inline CbsObservation run_cbs_pattern(const CbsPattern& p) {
  sim::Simulator sim;
  CbsObservation obs;
  switching::EgressPort port(sim, 0, p.rate_bps, [](frames::EthernetFrame, sim::SimTime) {}, 100'000);
  port.set_idle_slope(6, p.idle_slope_bps);
  for (const auto& a : p.arrivals) {
    sim.schedule(a.at, 0, sim::EventKind::FrameArrival, [&port, a] {
      std::optional<frames::VlanTag> tag;
      if (a.pcp != 0) tag = frames::VlanTag::make(2, a.pcp);
      auto f = frames::EthernetFrame::make(mac_from(1), mac_from(2), tag, frames::UdpDatagram{}, a.bytes);
      port.enqueue(std::move(f));
    });
    obs.max_frame_bits = std::max<std::int64_t>(obs.max_frame_bits, (std::int64_t{a.bytes} + 20) * 8);
  }
  // sample the credit once a shaped transmission has completed: this event is
  // queued before the port's own completion, so it re-schedules itself once
  port.set_tx_observer([&](const switching::TxRecord& r) {
    obs.tx.push_back(r);
    if (r.pcp != 6) return;
    sim.schedule(r.end, 0, sim::EventKind::Timer, [&sim, &port, &obs] {
      sim.schedule(sim.now(), 0, sim::EventKind::Timer, [&port, &obs] {
        if (port.depth(6) != 0 || port.busy()) return;
        ++obs.empty_queue_checks;
        if (port.credit(6)->credit_nbits > 0) ++obs.positive_on_empty;
      });
    });
  });
  sim.run_until(p.horizon * 4);
  return obs;
}

/// Largest excess of shaped bits sent in a window of at least `min_window`
/// over idle_slope * window. Windows start at a transmission start and end at
/// a transmission end (where the excess peaks); bits are pro-rated by time.
inline double worst_cbs_excess(const CbsPattern& p, const CbsObservation& obs, sim::SimTime min_window) {
  std::vector<switching::TxRecord> shaped;
  for (const auto& r : obs.tx)
    if (r.pcp == 6) shaped.push_back(r);
  std::vector<double> prefix(shaped.size() + 1, 0.0);
  for (std::size_t k = 0; k < shaped.size(); ++k) prefix[k + 1] = prefix[k] + static_cast<double>(shaped[k].bits);
  double worst = -1e300;
  for (std::size_t i = 0; i < shaped.size(); ++i) {
    const auto a = shaped[i].start.count();
    for (std::size_t j = i; j < shaped.size(); ++j) {
      const auto b = shaped[j].end.count();
      if (b - a < min_window.count()) continue;
      const double bits = prefix[j + 1] - prefix[i];
      const double allowed = static_cast<double>(p.idle_slope_bps) * static_cast<double>(b - a) / 1e9;
      worst = std::max(worst, bits - allowed);
    }
  }
  return worst;
}

}  // namespace tssdn::testing
