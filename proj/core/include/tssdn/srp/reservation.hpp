#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tssdn/frames/frame.hpp"
#include "tssdn/sim/simulator.hpp"
#include "tssdn/srp/stream_id.hpp"

namespace tssdn::srp {

inline constexpr double kDefaultAdmissionFraction = 0.75;

struct Reservation {
  StreamId stream;
  SrClassName sr_class = SrClassName::ClassA;
  std::uint8_t pcp = 6;
  std::uint32_t max_frame_bytes = 0;
  sim::SimTime interval;

  /// (max_frame_bytes + 20) * 8 bits per interval, rounded up to whole bits/s.
  std::int64_t reserved_bps() const;
};

/// Throws std::invalid_argument on zero frame size or zero interval.
Reservation make_reservation(const frames::StreamDescriptor& desc);
Reservation make_reservation(StreamId stream, SrClassName cls, std::uint8_t pcp, std::uint32_t max_frame_bytes,
                             sim::SimTime interval);

/// Reservation state of one egress port.
class PortBudget {
 public:
  PortBudget(sim::PortId port, std::int64_t rate_bps, double admission_fraction = kDefaultAdmissionFraction);

  sim::PortId port() const { return port_; }
  std::int64_t rate_bps() const { return rate_bps_; }
  std::int64_t limit_bps() const;
  std::int64_t total_reserved_bps() const;
  /// Sum of reservations carried at `pcp`, i.e. the idle slope for that class.
  std::int64_t idle_slope(std::uint8_t pcp) const;
  bool holds(const StreamId& stream) const { return reserved_.contains(stream); }

 private:
  friend struct AdmissionAccess;

  struct Entry {
    std::uint8_t pcp;
    std::int64_t bps;
  };

  sim::PortId port_;
  std::int64_t rate_bps_;
  double fraction_;
  std::map<StreamId, Entry> reserved_;
};

struct Admission {
  bool admitted = false;
  sim::PortId port = 0;  // offending port when rejected
  std::int64_t idle_slope_bps = 0;  // class idle slope after the decision
};

/// Admits iff total reserved + new <= fraction * port rate. Re-admitting a
/// stream already held by the port is a no-op that reports Admitted.
Admission admit(PortBudget& budget, const Reservation& reservation);

/// Worst-case latency for a stream scheduled at `scheduled_ports` egress ports.
sim::SimTime analytic_guarantee(const SrClass& cls, int scheduled_ports);

}  // namespace tssdn::srp
