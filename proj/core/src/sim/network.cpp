#include "tssdn/sim/network.hpp"

#include <stdexcept>

#include "tssdn/sim/error.hpp"

namespace tssdn::sim {

SimTime serialization_time(std::uint64_t bits, std::int64_t rate_bps) {
  if (rate_bps <= 0) throw std::invalid_argument("link rate must be positive");
  const auto rate = static_cast<std::uint64_t>(rate_bps);
  const std::uint64_t scaled = bits * 1'000'000'000ULL;
  return SimTime::ns(static_cast<SimTime::rep>((scaled + rate - 1) / rate));
}

SimTime serialization_time(const frames::EthernetFrame& frame, std::int64_t rate_bps) {
  return serialization_time(frames::wire_bits(frame), rate_bps);
}

Link::Link(Endpoint a, Endpoint b, LinkParams params) : a_(a), b_(b), params_(params) {
  if (params_.rate_bps <= 0) throw std::invalid_argument("link rate must be positive");
}

NodeId Network::add_node(std::unique_ptr<Node> node) {
  const auto id = static_cast<NodeId>(nodes_.size());
  node->id_ = id;
  node->net_ = this;
  attachments_.emplace_back(node->port_count());
  nodes_.push_back(std::move(node));
  nodes_.back()->on_added();
  return id;
}

Node* Network::find(const std::string& name) const {
  for (const auto& n : nodes_) {
    if (n->name() == name) return n.get();
  }
  return nullptr;
}

LinkId Network::connect(Endpoint a, Endpoint b, LinkParams params) {
  for (const Endpoint& e : {a, b}) {
    if (e.node >= nodes_.size()) throw std::invalid_argument("link endpoint refers to unknown node");
    if (e.port >= attachments_[e.node].size()) {
      throw std::invalid_argument("port " + std::to_string(e.port) + " out of range on " + nodes_[e.node]->name());
    }
    if (attachments_[e.node][e.port]) {
      throw std::invalid_argument("port " + std::to_string(e.port) + " on " + nodes_[e.node]->name() +
                                  " already connected");
    }
  }
  if (a == b) throw std::invalid_argument("link endpoints must differ");
  const auto id = static_cast<LinkId>(links_.size());
  links_.emplace_back(a, b, params);
  attachments_[a.node][a.port] = Attachment{id, Direction::AtoB};
  attachments_[b.node][b.port] = Attachment{id, Direction::BtoA};
  return id;
}

std::optional<Attachment> Network::attachment(NodeId node, PortId port) const {
  if (node >= attachments_.size() || port >= attachments_[node].size()) return std::nullopt;
  return attachments_[node][port];
}

SimTime Network::transmit(LinkId link_id, Direction direction, frames::EthernetFrame frame, SimTime start) {
  Link& link = links_.at(link_id);
  auto& busy = link.busy_until_[static_cast<int>(direction)];
  if (start < busy) {
    throw ModelError("overlapping transmission on link " + std::to_string(link_id) + " at " + start.to_string());
  }
  const SimTime ser = serialization_time(frame, link.rate_bps());
  busy = start + ser;
  const SimTime arrival = busy + link.propagation_delay();
  const Endpoint rx = link.receiver(direction);
  Node* target = nodes_[rx.node].get();
  sim_.schedule(arrival, rx.node, EventKind::FrameArrival,
                [target, port = rx.port, f = std::move(frame)]() mutable { target->receive(port, std::move(f)); });
  return arrival;
}

SimTime Network::transmit_from(NodeId node, PortId port, frames::EthernetFrame frame, SimTime start) {
  const auto att = attachment(node, port);
  if (!att) throw ModelError("transmit on unconnected port " + std::to_string(port) + " of " + nodes_.at(node)->name());
  return transmit(att->link, att->outbound, std::move(frame), start);
}

}  // namespace tssdn::sim
