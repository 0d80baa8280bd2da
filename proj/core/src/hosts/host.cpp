#include "tssdn/hosts/host.hpp"

#include "tssdn/sim/error.hpp"

namespace tssdn::hosts {

Host::Host(sim::Simulator& sim, HostConfig config, metrics::MetricsSink* sink)
    : sim::Node(config.name),
      sim_(sim),
      config_(std::move(config)),
      sink_(sink),
      budget_(0, sim::kDefaultLinkRate, config_.admission_fraction) {}

void Host::on_added() {
  auto wire = [this](frames::EthernetFrame f, sim::SimTime start) {
    network().transmit_from(id(), 0, std::move(f), start);
  };
  nic_ = std::make_unique<switching::EgressPort>(sim_, id(), sim::kDefaultLinkRate, wire, config_.queue_capacity);
  if (config_.shaper_disabled) nic_->set_mode(switching::EgressMode::Fifo);
}

void Host::set_port_rate(std::int64_t rate_bps) {
  nic_->set_rate(rate_bps);
  budget_ = srp::PortBudget(0, rate_bps, config_.admission_fraction);
}

void Host::start() {
  for (auto& app : apps_) app->start();
}

void Host::send(frames::EthernetFrame frame) {
  if (!nic_) throw ModelError("host " + name() + " is not part of a network");
  frame.uid = network().next_frame_uid();
  ++counters_.sent;
  nic_->enqueue(std::move(frame));
}

HostCounters Host::counters() const {
  HostCounters c = counters_;
  if (nic_) c.nic_overflow = nic_->overflow_drops();
  return c;
}

void Host::warn(const std::string& message) const {
  if (sink_) sink_->warn(sim_.now(), name(), message);
}

void Host::trace(metrics::TraceKind kind, std::string stream, std::string detail) const {
  if (sink_) sink_->trace(sim_.now(), name(), kind, 0, std::move(stream), std::move(detail));
}

void Host::receive(sim::PortId, frames::EthernetFrame frame) {
  ++counters_.received;
  if (config_.processing_delay == sim::SimTime{}) {
    handle(frame);
    return;
  }
  sim_.schedule_in(config_.processing_delay, id(), sim::EventKind::Timer,
                   [this, f = std::move(frame)] { handle(f); });
}

void Host::handle(const frames::EthernetFrame& frame) {
  if (!frame.dst.is_multicast() && frame.dst != config_.mac) {
    ++counters_.unhandled;  // flooded unicast for someone else
    return;
  }
  if (const auto* arp = frame.as<frames::ArpMessage>();
      arp && arp->kind == frames::ArpKind::Request) {
    if (arp->asked != config_.ip) return;
    ++counters_.arp_replies_sent;
    send(frames::EthernetFrame::make(config_.mac, frame.src, std::nullopt,
                                     frames::ArpMessage{frames::ArpKind::Reply, config_.ip, config_.mac},
                                     frames::kMinFrameBytes));
    return;
  }
  for (auto& app : apps_) {
    if (app->on_frame(frame)) return;
  }
  ++counters_.unhandled;
}

}  // namespace tssdn::hosts
