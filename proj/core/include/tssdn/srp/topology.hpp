#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tssdn::srp {

/// Undirected node graph of the dataplane (controller links excluded).
class Topology {
 public:
  void add_node(const std::string& name);
  void add_edge(const std::string& a, const std::string& b);

  bool contains(const std::string& name) const { return adjacency_.contains(name); }
  bool connected() const;
  const std::set<std::string>& neighbours(const std::string& name) const;

  /// Shortest node path from `from` to `to` (inclusive), if any.
  std::optional<std::vector<std::string>> path(const std::string& from, const std::string& to) const;

 private:
  std::map<std::string, std::set<std::string>> adjacency_;
};

/// Number of egress ports a frame traverses from talker to listener, counting
/// the talker's own NIC. Throws std::invalid_argument when no path exists.
int count_scheduled_ports(const Topology& topology, const std::string& talker, const std::string& listener);

}  // namespace tssdn::srp
