#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tssdn/frames/frame.hpp"
#include "tssdn/sim/simulator.hpp"

namespace tssdn::sim {

using LinkId = std::uint32_t;

struct Endpoint {
  NodeId node = kNoNode;
  PortId port = 0;

  bool operator==(const Endpoint&) const = default;
};

enum class Direction : std::uint8_t { AtoB = 0, BtoA = 1 };

inline constexpr std::int64_t kDefaultLinkRate = 100'000'000;

struct LinkParams {
  std::int64_t rate_bps = kDefaultLinkRate;
  SimTime propagation;
};

/// Serialization time of `bits` at `rate_bps`, rounded up to whole nanoseconds.
SimTime serialization_time(std::uint64_t bits, std::int64_t rate_bps);
SimTime serialization_time(const frames::EthernetFrame& frame, std::int64_t rate_bps);

/// Full-duplex point-to-point link; each direction carries one frame at a time.
class Link {
 public:
  Link(Endpoint a, Endpoint b, LinkParams params);

  const Endpoint& endpoint_a() const { return a_; }
  const Endpoint& endpoint_b() const { return b_; }
  std::int64_t rate_bps() const { return params_.rate_bps; }
  SimTime propagation_delay() const { return params_.propagation; }
  SimTime busy_until(Direction d) const { return busy_until_[static_cast<int>(d)]; }

  const Endpoint& sender(Direction d) const { return d == Direction::AtoB ? a_ : b_; }
  const Endpoint& receiver(Direction d) const { return d == Direction::AtoB ? b_ : a_; }

 private:
  friend class Network;

  Endpoint a_;
  Endpoint b_;
  LinkParams params_;
  std::array<SimTime, 2> busy_until_{};
};

class Network;

/// Anything with Ethernet ports: hosts and switches (the controller has none).
class Node {
 public:
  explicit Node(std::string name) : name_(std::move(name)) {}
  virtual ~Node() = default;

  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  NodeId id() const { return id_; }
  const std::string& name() const { return name_; }

  virtual std::size_t port_count() const = 0;

  /// Called when a frame has been completely received on `port`.
  virtual void receive(PortId port, frames::EthernetFrame frame) = 0;

  /// Called once the network has assigned the node its id.
  virtual void on_added() {}

 protected:
  Network& network() const { return *net_; }
  bool attached() const { return net_ != nullptr; }

 private:
  friend class Network;

  NodeId id_ = kNoNode;
  std::string name_;
  Network* net_ = nullptr;
};

struct Attachment {
  LinkId link;
  Direction outbound;
};

class Network {
 public:
  explicit Network(Simulator& sim) : sim_(sim) {}

  Simulator& sim() { return sim_; }

  template <class T, class... Args>
  T& emplace_node(Args&&... args) {
    auto node = std::make_unique<T>(std::forward<Args>(args)...);
    T& ref = *node;
    add_node(std::move(node));
    return ref;
  }

  NodeId add_node(std::unique_ptr<Node> node);
  Node& node(NodeId id) const { return *nodes_.at(id); }
  Node* find(const std::string& name) const;
  std::size_t node_count() const { return nodes_.size(); }

  /// Throws std::invalid_argument for unknown nodes, out-of-range or already used ports, or rate <= 0.
  LinkId connect(Endpoint a, Endpoint b, LinkParams params = {});

  const Link& link(LinkId id) const { return links_.at(id); }
  std::size_t link_count() const { return links_.size(); }
  std::optional<Attachment> attachment(NodeId node, PortId port) const;

  /// Starts serializing `frame` at `start`; schedules the arrival at the far end
  /// and returns its time. Throws ModelError if the direction is still busy.
  SimTime transmit(LinkId link, Direction direction, frames::EthernetFrame frame, SimTime start);

  /// Convenience: transmit out of (node, port).
  SimTime transmit_from(NodeId node, PortId port, frames::EthernetFrame frame, SimTime start);

  std::uint64_t next_frame_uid() { return ++frame_uid_; }

 private:
  Simulator& sim_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<Link> links_;
  // attachments_[node][port]
  std::vector<std::vector<std::optional<Attachment>>> attachments_;
  std::uint64_t frame_uid_ = 0;
};

}  // namespace tssdn::sim
