#include "tssdn/scenario/units.hpp"

#include <array>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace tssdn::scenario {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Scales a non-negative decimal literal by 10^exp10 and requires an integer result.
std::int64_t scaled_decimal(std::string_view number, int exp10, std::string_view original) {
  const auto bad = [&](const char* why) {
    return std::invalid_argument("'" + std::string(original) + "': " + why);
  };
  if (number.empty()) throw bad("missing number");

  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (char c : number) {
    if (c == '.') {
      if (seen_dot) throw bad("malformed number");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw bad("malformed number");
    }
  }
  if (digits.empty()) throw bad("malformed number");

  int shift = exp10 - frac_digits;
  while (shift < 0) {
    if (digits.back() != '0') throw bad("not a whole number in the base unit");
    digits.pop_back();
    ++shift;
    if (digits.empty()) digits = "0";
  }
  digits.append(static_cast<std::size_t>(shift), '0');

  std::int64_t value = 0;
  for (char c : digits) {
    const int d = c - '0';
    if (value > (std::numeric_limits<std::int64_t>::max() - d) / 10) throw bad("out of range");
    value = value * 10 + d;
  }
  return value;
}

std::pair<std::string_view, std::string_view> split_unit(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
  return {s.substr(0, i), trim(s.substr(i))};
}

}  // namespace

sim::SimTime parse_time(std::string_view text) {
  const auto s = trim(text);
  if (!s.empty() && s.front() == '-') throw std::invalid_argument("'" + std::string(text) + "': negative time");
  const auto [number, unit] = split_unit(s);
  static constexpr std::array<std::pair<std::string_view, int>, 5> kUnits{
      {{"ns", 0}, {"us", 3}, {"µs", 3}, {"ms", 6}, {"s", 9}}};
  if (unit.empty()) {
    const auto v = scaled_decimal(number, 0, text);
    if (v != 0) throw std::invalid_argument("'" + std::string(text) + "': time needs a unit (ns, us, ms, s)");
    return sim::SimTime{};
  }
  for (const auto& [name, exp] : kUnits) {
    if (unit == name) return sim::SimTime::ns(scaled_decimal(number, exp, text));
  }
  throw std::invalid_argument("'" + std::string(text) + "': unknown time unit '" + std::string(unit) + "'");
}

std::int64_t parse_rate(std::string_view text) {
  const auto s = trim(text);
  const auto [number, unit] = split_unit(s);
  static constexpr std::array<std::pair<std::string_view, int>, 5> kUnits{
      {{"", 0}, {"bps", 0}, {"kbps", 3}, {"Mbps", 6}, {"Gbps", 9}}};
  for (const auto& [name, exp] : kUnits) {
    if (unit == name) {
      const auto v = scaled_decimal(number, exp, text);
      if (v <= 0) throw std::invalid_argument("'" + std::string(text) + "': rate must be positive");
      return v;
    }
  }
  throw std::invalid_argument("'" + std::string(text) + "': unknown rate unit '" + std::string(unit) + "'");
}

}  // namespace tssdn::scenario
