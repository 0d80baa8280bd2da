#pragma once

#include <cstdint>
#include <string>

#include "tssdn/control/control_message.hpp"
#include "tssdn/metrics/sink.hpp"
#include "tssdn/sim/simulator.hpp"

namespace tssdn::control {

struct ChannelDelays {
  sim::SimTime one_way;     // each direction
  sim::SimTime processing;  // added on arrival at the controller
};

/// Default calibration: 25 us one way, 25 us processing, i.e. 75 us per
/// switch-to-controller round trip.
ChannelDelays default_channel_delays();

/// Receiving side of a control channel.
class ControlEndpoint {
 public:
  virtual ~ControlEndpoint() = default;
  virtual void on_control(std::size_t channel, ControlMessage msg) = 0;
};

/// Southbound channel between one switch and the controller. Both directions
/// apply a fixed delay, so delivery order equals send order.
class ControlChannel {
 public:
  ControlChannel(sim::Simulator& sim, std::size_t index, std::string switch_name, ChannelDelays delays,
                 metrics::MetricsSink* sink = nullptr);

  void bind(ControlEndpoint* controller, sim::NodeId controller_node, ControlEndpoint* sw, sim::NodeId switch_node);

  std::size_t index() const { return index_; }
  const std::string& switch_name() const { return switch_name_; }
  const ChannelDelays& delays() const { return delays_; }

  /// Delivery time of a message sent now in the given direction.
  sim::SimTime delivery_time(metrics::ControlDir dir) const;

  /// Sends and returns the delivery time.
  sim::SimTime send_to_controller(ControlMessage msg);
  sim::SimTime send_to_switch(ControlMessage msg);

  std::uint32_t next_xid() { return ++xid_; }
  std::uint64_t sent(metrics::ControlDir dir) const { return sent_[static_cast<int>(dir)]; }

 private:
  sim::SimTime deliver(metrics::ControlDir dir, ControlMessage msg);

  sim::Simulator& sim_;
  std::size_t index_;
  std::string switch_name_;
  ChannelDelays delays_;
  metrics::MetricsSink* sink_;
  ControlEndpoint* controller_ = nullptr;
  ControlEndpoint* switch_ = nullptr;
  sim::NodeId controller_node_ = sim::kNoNode;
  sim::NodeId switch_node_ = sim::kNoNode;
  std::uint32_t xid_ = 0;
  std::uint64_t sent_[2] = {0, 0};
};

/// Free-function form: delivery time of `msg` on `ch` when sent now.
sim::SimTime channel_deliver(ControlChannel& ch, metrics::ControlDir dir, ControlMessage msg);

}  // namespace tssdn::control
