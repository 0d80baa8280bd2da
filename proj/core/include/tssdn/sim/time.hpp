#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tssdn::sim {

/// Simulated time as integer nanoseconds since simulation start.
///
/// Used both for instants and for (non-negative) durations. All arithmetic
/// is exact; constructing a negative value throws std::out_of_range.
class SimTime {
 public:
  using rep = std::int64_t;

  constexpr SimTime() = default;

  static constexpr SimTime ns(rep v) { return SimTime{checked(v)}; }
  static constexpr SimTime us(rep v) { return SimTime{checked(v * 1'000)}; }
  static constexpr SimTime ms(rep v) { return SimTime{checked(v * 1'000'000)}; }
  static constexpr SimTime s(rep v) { return SimTime{checked(v * 1'000'000'000)}; }
  static constexpr SimTime max() { return SimTime{std::numeric_limits<rep>::max()}; }

  constexpr rep count() const { return ns_; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(SimTime o) const { return SimTime{checked(ns_ + o.ns_)}; }
  constexpr SimTime operator-(SimTime o) const { return SimTime{checked(ns_ - o.ns_)}; }
  constexpr SimTime operator*(rep k) const { return SimTime{checked(ns_ * k)}; }
  constexpr SimTime& operator+=(SimTime o) { return *this = *this + o; }

  std::string to_string() const;

 private:
  constexpr explicit SimTime(rep v) : ns_(v) {}

  static constexpr rep checked(rep v) {
    if (v < 0) throw std::out_of_range("SimTime must be non-negative");
    return v;
  }

  rep ns_ = 0;
};

std::ostream& operator<<(std::ostream& os, SimTime t);

namespace literals {
constexpr SimTime operator""_ns(unsigned long long v) { return SimTime::ns(static_cast<SimTime::rep>(v)); }
constexpr SimTime operator""_us(unsigned long long v) { return SimTime::us(static_cast<SimTime::rep>(v)); }
constexpr SimTime operator""_ms(unsigned long long v) { return SimTime::ms(static_cast<SimTime::rep>(v)); }
constexpr SimTime operator""_s(unsigned long long v) { return SimTime::s(static_cast<SimTime::rep>(v)); }
}  // namespace literals

}  // namespace tssdn::sim
