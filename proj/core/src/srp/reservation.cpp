#include "tssdn/srp/reservation.hpp"

#include <cmath>
#include <stdexcept>

namespace tssdn::srp {

std::int64_t Reservation::reserved_bps() const {
  const auto bits = static_cast<std::int64_t>(max_frame_bytes + frames::kWireOverheadBytes) * 8;
  const auto interval_ns = interval.count();
  return (bits * 1'000'000'000 + interval_ns - 1) / interval_ns;
}

Reservation make_reservation(StreamId stream, SrClassName cls, std::uint8_t pcp, std::uint32_t max_frame_bytes,
                             sim::SimTime interval) {
  if (max_frame_bytes == 0) throw std::invalid_argument("reservation with zero frame size");
  if (interval.count() == 0) throw std::invalid_argument("reservation with zero interval");
  return Reservation{stream, cls, pcp, max_frame_bytes, interval};
}

Reservation make_reservation(const frames::StreamDescriptor& desc) {
  return make_reservation(desc.id, desc.sr_class, desc.vlan.pcp, desc.max_frame_bytes, desc.interval);
}

PortBudget::PortBudget(sim::PortId port, std::int64_t rate_bps, double admission_fraction)
    : port_(port), rate_bps_(rate_bps), fraction_(admission_fraction) {
  if (rate_bps <= 0) throw std::invalid_argument("port rate must be positive");
  if (!(admission_fraction > 0.0 && admission_fraction <= 1.0)) {
    throw std::invalid_argument("admission fraction must lie in (0, 1]");
  }
}

std::int64_t PortBudget::limit_bps() const {
  return static_cast<std::int64_t>(std::floor(fraction_ * static_cast<double>(rate_bps_)));
}

std::int64_t PortBudget::total_reserved_bps() const {
  std::int64_t sum = 0;
  for (const auto& [_, e] : reserved_) sum += e.bps;
  return sum;
}

std::int64_t PortBudget::idle_slope(std::uint8_t pcp) const {
  std::int64_t sum = 0;
  for (const auto& [_, e] : reserved_) {
    if (e.pcp == pcp) sum += e.bps;
  }
  return sum;
}

struct AdmissionAccess {
  static void add(PortBudget& b, const Reservation& r) { b.reserved_[r.stream] = {r.pcp, r.reserved_bps()}; }
};

Admission admit(PortBudget& budget, const Reservation& reservation) {
  if (reservation.max_frame_bytes == 0 || reservation.interval.count() == 0) {
    throw std::invalid_argument("invalid reservation");
  }
  if (budget.holds(reservation.stream)) {
    return {true, budget.port(), budget.idle_slope(reservation.pcp)};
  }
  const std::int64_t wanted = budget.total_reserved_bps() + reservation.reserved_bps();
  if (wanted > budget.limit_bps()) {
    return {false, budget.port(), budget.idle_slope(reservation.pcp)};
  }
  AdmissionAccess::add(budget, reservation);
  return {true, budget.port(), budget.idle_slope(reservation.pcp)};
}

sim::SimTime analytic_guarantee(const SrClass& cls, int scheduled_ports) {
  if (scheduled_ports < 1) throw std::invalid_argument("at least one scheduled port required");
  return cls.per_hop_max_latency * scheduled_ports;
}

}  // namespace tssdn::srp
