#pragma once

#include <map>
#include <optional>
#include <set>

#include "tssdn/frames/frame.hpp"
#include "tssdn/sim/simulator.hpp"

namespace tssdn::switching {

using sim::PortId;

struct StreamRegistration {
  frames::StreamDescriptor descriptor;
  PortId talker_port = 0;
  std::set<PortId> listener_ports;
};

/// Registered talkers and listeners, keyed by stream id.
class SrTable {
 public:
  enum class TalkerUpdate { Added, Unchanged, Updated, Moved };

  TalkerUpdate register_talker(const frames::StreamDescriptor& desc, PortId port);
  /// False when the stream is unknown (no talker registered yet).
  bool add_listener(const srp::StreamId& stream, PortId port);

  const StreamRegistration* find(const srp::StreamId& stream) const;
  /// Stream registered for (destination group, VLAN id), if any.
  const StreamRegistration* find_by_group(const frames::MacAddress& group, std::uint16_t vid) const;

  const std::map<srp::StreamId, StreamRegistration>& streams() const { return streams_; }

 private:
  std::map<srp::StreamId, StreamRegistration> streams_;
};

}  // namespace tssdn::switching
