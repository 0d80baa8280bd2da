#include "tssdn/sim/time.hpp"

#include <sstream>

namespace tssdn::sim {

std::string SimTime::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, SimTime t) {
  const auto v = t.count();
  if (v % 1'000'000 == 0 && v != 0) return os << v / 1'000'000 << "ms";
  if (v % 1'000 == 0 && v != 0) return os << v / 1'000 << "us";
  return os << v << "ns";
}

}  // namespace tssdn::sim
