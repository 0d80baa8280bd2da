#include "tssdn/switching/sr_table.hpp"

namespace tssdn::switching {

SrTable::TalkerUpdate SrTable::register_talker(const frames::StreamDescriptor& desc, PortId port) {
  auto it = streams_.find(desc.id);
  if (it == streams_.end()) {
    streams_.emplace(desc.id, StreamRegistration{desc, port, {}});
    return TalkerUpdate::Added;
  }
  auto& reg = it->second;
  if (reg.talker_port == port && reg.descriptor == desc) return TalkerUpdate::Unchanged;
  const bool moved = reg.talker_port != port;
  reg.descriptor = desc;
  reg.talker_port = port;
  if (moved) {
    reg.listener_ports.erase(port);
    return TalkerUpdate::Moved;
  }
  return TalkerUpdate::Updated;
}

bool SrTable::add_listener(const srp::StreamId& stream, PortId port) {
  auto it = streams_.find(stream);
  if (it == streams_.end()) return false;
  it->second.listener_ports.insert(port);
  return true;
}

const StreamRegistration* SrTable::find(const srp::StreamId& stream) const {
  auto it = streams_.find(stream);
  return it == streams_.end() ? nullptr : &it->second;
}

const StreamRegistration* SrTable::find_by_group(const frames::MacAddress& group, std::uint16_t vid) const {
  for (const auto& [_, reg] : streams_) {
    if (reg.descriptor.dst_group == group && reg.descriptor.vlan.vid == vid) return &reg;
  }
  return nullptr;
}

}  // namespace tssdn::switching
