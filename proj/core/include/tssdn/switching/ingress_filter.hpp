#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "tssdn/frames/frame.hpp"
#include "tssdn/sim/simulator.hpp"

namespace tssdn::switching {

/// Per-stream filter: a stream frame must arrive on the port its talker was
/// registered on. Frames of unregistered streams and non-stream frames pass.
class IngressFilter {
 public:
  void expect(const frames::MacAddress& group, std::uint16_t vid, sim::PortId port);

  /// True if the frame may proceed; otherwise the stream's drop counter is bumped.
  bool admit(const frames::EthernetFrame& frame, sim::PortId in_port);

  std::uint64_t drops(const frames::MacAddress& group, std::uint16_t vid) const;
  std::uint64_t total_drops() const { return total_drops_; }
  std::size_t size() const { return rules_.size(); }

 private:
  struct Rule {
    sim::PortId expected_in_port;
    std::uint64_t drops = 0;
  };
  std::map<std::pair<frames::MacAddress, std::uint16_t>, Rule> rules_;
  std::uint64_t total_drops_ = 0;
};

}  // namespace tssdn::switching
