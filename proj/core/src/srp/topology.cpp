#include "tssdn/srp/topology.hpp"

#include <deque>
#include <stdexcept>

namespace tssdn::srp {

void Topology::add_node(const std::string& name) { adjacency_[name]; }

void Topology::add_edge(const std::string& a, const std::string& b) {
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
}

const std::set<std::string>& Topology::neighbours(const std::string& name) const { return adjacency_.at(name); }

bool Topology::connected() const {
  if (adjacency_.empty()) return true;
  std::set<std::string> seen{adjacency_.begin()->first};
  std::deque<std::string> todo{adjacency_.begin()->first};
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop_front();
    for (const auto& n : adjacency_.at(cur)) {
      if (seen.insert(n).second) todo.push_back(n);
    }
  }
  return seen.size() == adjacency_.size();
}

std::optional<std::vector<std::string>> Topology::path(const std::string& from, const std::string& to) const {
  if (!contains(from) || !contains(to)) return std::nullopt;
  std::map<std::string, std::string> parent{{from, from}};
  std::deque<std::string> todo{from};
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop_front();
    if (cur == to) break;
    for (const auto& n : adjacency_.at(cur)) {
      if (parent.emplace(n, cur).second) todo.push_back(n);
    }
  }
  if (!parent.contains(to)) return std::nullopt;
  std::vector<std::string> out{to};
  while (out.back() != from) out.push_back(parent.at(out.back()));
  return std::vector<std::string>(out.rbegin(), out.rend());
}

int count_scheduled_ports(const Topology& topology, const std::string& talker, const std::string& listener) {
  if (talker == listener) return 0;
  const auto p = topology.path(talker, listener);
  if (!p) throw std::invalid_argument("no path from " + talker + " to " + listener);
  // every node but the listener transmits the frame once
  return static_cast<int>(p->size()) - 1;
}

}  // namespace tssdn::srp
