#include "tssdn/control/control_channel.hpp"

#include "tssdn/sim/error.hpp"

namespace tssdn::control {

ChannelDelays default_channel_delays() { return {sim::SimTime::us(25), sim::SimTime::us(25)}; }

ControlChannel::ControlChannel(sim::Simulator& sim, std::size_t index, std::string switch_name, ChannelDelays delays,
                               metrics::MetricsSink* sink)
    : sim_(sim), index_(index), switch_name_(std::move(switch_name)), delays_(delays), sink_(sink) {}

void ControlChannel::bind(ControlEndpoint* controller, sim::NodeId controller_node, ControlEndpoint* sw,
                          sim::NodeId switch_node) {
  controller_ = controller;
  controller_node_ = controller_node;
  switch_ = sw;
  switch_node_ = switch_node;
}

sim::SimTime ControlChannel::delivery_time(metrics::ControlDir dir) const {
  const auto t = sim_.now() + delays_.one_way;
  return dir == metrics::ControlDir::ToController ? t + delays_.processing : t;
}

sim::SimTime ControlChannel::send_to_controller(ControlMessage msg) {
  return deliver(metrics::ControlDir::ToController, std::move(msg));
}

sim::SimTime ControlChannel::send_to_switch(ControlMessage msg) {
  return deliver(metrics::ControlDir::ToSwitch, std::move(msg));
}

sim::SimTime ControlChannel::deliver(metrics::ControlDir dir, ControlMessage msg) {
  const bool up = dir == metrics::ControlDir::ToController;
  ControlEndpoint* target = up ? controller_ : switch_;
  if (target == nullptr) throw ModelError("control channel to " + switch_name_ + " is not bound");
  const auto at = delivery_time(dir);
  ++sent_[static_cast<int>(dir)];
  sim_.schedule(at, up ? controller_node_ : switch_node_, sim::EventKind::ControlDelivery,
                [this, target, at, dir, m = std::move(msg)]() mutable {
                  if (sink_) sink_->record_control({at, dir, switch_name_, kind_name(m), m.xid});
                  target->on_control(index_, std::move(m));
                });
  return at;
}

sim::SimTime channel_deliver(ControlChannel& ch, metrics::ControlDir dir, ControlMessage msg) {
  return dir == metrics::ControlDir::ToController ? ch.send_to_controller(std::move(msg))
                                                  : ch.send_to_switch(std::move(msg));
}

}  // namespace tssdn::control
