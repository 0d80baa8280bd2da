#include "tssdn/hosts/apps.hpp"

#include "tssdn/sim/error.hpp"

namespace tssdn::hosts {

using metrics::TraceKind;
using sim::EventKind;

namespace {

std::string key_of(const frames::StreamDescriptor& d) {
  return d.dst_group.to_string() + "@" + std::to_string(d.vlan.vid);
}

}  // namespace

// ---- Talker -----------------------------------------------------------------

Talker::Talker(Host& host, TalkerConfig config) : HostApp(host), config_(std::move(config)) {
  if (config_.stream.interval <= sim::SimTime{}) throw std::invalid_argument("talker interval must be positive");
  if (config_.frame_bytes > config_.stream.max_frame_bytes)
    throw std::invalid_argument("talker frame_bytes exceeds the reserved maximum frame size");
  flow_ = host.sink() ? host.sink()->register_flow(metrics::FlowKind::Stream, config_.label) : 0;
}

void Talker::start() {
  auto& sim = host().sim();
  sim.schedule(config_.advertise_at, host().id(), EventKind::Timer, [this] { advertise(); });
  sim.schedule(config_.advertise_at + config_.listener_timeout, host().id(), EventKind::Timer, [this] {
    if (!ready_at_) host().warn("no listener ready for " + config_.stream.id.to_string() + "; stream never starts");
  });
}

void Talker::advertise() {
  host().send(frames::EthernetFrame::make(host().mac(), frames::kSrpGroup, std::nullopt,
                                          frames::SrpMessage{frames::SrpKind::TalkerAdvertise, config_.stream},
                                          frames::kMinFrameBytes));
  host().trace(TraceKind::SrpSent, key_of(config_.stream), "TalkerAdvertise");
}

bool Talker::on_frame(const frames::EthernetFrame& frame) {
  const auto* srp = frame.as<frames::SrpMessage>();
  if (!srp || srp->stream.id != config_.stream.id) return false;
  if (srp->kind != frames::SrpKind::ListenerReady || ready_at_) return true;

  auto& sim = host().sim();
  const auto adm = srp::admit(host().budget(), srp::make_reservation(config_.stream));
  if (!adm.admitted) {
    host().warn("talker port cannot admit " + config_.stream.id.to_string());
    return true;
  }
  host().nic().set_idle_slope(config_.stream.vlan.pcp, adm.idle_slope_bps);
  ready_at_ = sim.now();
  host().trace(TraceKind::ListenerReadyAtTalker, key_of(config_.stream));
  sim.schedule_in(config_.stream.interval, host().id(), EventKind::Timer, [this] { emit(); });
  return true;
}

void Talker::emit() {
  if (config_.count && seq_ >= *config_.count) return;
  auto& sim = host().sim();
  if (!first_send_) {
    first_send_ = sim.now();
    host().trace(TraceKind::StreamStart, key_of(config_.stream));
  }
  host().send(frames::EthernetFrame::make(host().mac(), config_.stream.dst_group, config_.stream.vlan,
                                          frames::StreamData{config_.stream.id, flow_, seq_, sim.now()},
                                          config_.frame_bytes));
  ++seq_;
  sim.schedule_in(config_.stream.interval, host().id(), EventKind::Timer, [this] { emit(); });
}

// ---- Listener ---------------------------------------------------------------

Listener::Listener(Host& host, srp::StreamId stream) : HostApp(host), stream_(stream) {}

bool Listener::on_frame(const frames::EthernetFrame& frame) {
  if (const auto* srp = frame.as<frames::SrpMessage>()) {
    if (srp->stream.id != stream_) return false;
    if (srp->kind != frames::SrpKind::TalkerAdvertise) return true;
    if (ready_sent_) return true;  // one ListenerReady per stream
    ready_sent_ = host().sim().now();
    host().send(frames::EthernetFrame::make(host().mac(), frames::kSrpGroup, std::nullopt,
                                            frames::SrpMessage{frames::SrpKind::ListenerReady, srp->stream},
                                            frames::kMinFrameBytes));
    host().trace(TraceKind::SrpSent, key_of(srp->stream), "ListenerReady");
    return true;
  }
  const auto* data = frame.as<frames::StreamData>();
  if (!data || data->stream != stream_) return false;
  if (!ready_sent_) throw ModelError("stream data for " + stream_.to_string() + " before listener ready");
  if (last_seq_ && data->seq <= *last_seq_) ++seq_violations_;
  last_seq_ = data->seq;
  ++received_;
  if (auto* sink = host().sink()) sink->record_latency(data->flow, data->seq, data->sent_at, host().sim().now());
  return true;
}

// ---- UdpSource --------------------------------------------------------------

UdpSource::UdpSource(Host& host, UdpSourceConfig config) : HostApp(host), config_(std::move(config)) {
  if (config_.send_interval <= sim::SimTime{}) throw std::invalid_argument("udp send_interval must be positive");
  flow_ = host.sink() ? host.sink()->register_flow(metrics::FlowKind::Udp, config_.label) : 0;
}

void UdpSource::start() {
  host().sim().schedule(config_.start_at, host().id(), EventKind::Timer, [this] { request(); });
}

void UdpSource::request() {
  if (resolved_) return;
  if (attempts_ > config_.arp_retries) {
    host().warn("ARP for " + config_.dst.to_string() + " unanswered; udp source stays silent");
    return;
  }
  ++attempts_;
  host().send(frames::EthernetFrame::make(host().mac(), frames::MacAddress::broadcast(), std::nullopt,
                                          frames::ArpMessage{frames::ArpKind::Request, config_.dst, std::nullopt},
                                          frames::kMinFrameBytes));
  host().sim().schedule_in(config_.arp_timeout, host().id(), EventKind::Timer, [this] { request(); });
}

bool UdpSource::on_frame(const frames::EthernetFrame& frame) {
  const auto* arp = frame.as<frames::ArpMessage>();
  if (!arp || arp->kind != frames::ArpKind::Reply || arp->asked != config_.dst || !arp->answer) return false;
  if (resolved_) return true;
  resolved_ = *arp->answer;
  auto& sim = host().sim();
  resolved_at_ = sim.now();
  host().trace(TraceKind::ArpResolved, {}, config_.dst.to_string());
  sim.schedule_in(config_.start_offset, host().id(), EventKind::Timer, [this] { emit(); });
  return true;
}

void UdpSource::emit() {
  if (config_.count && seq_ >= *config_.count) return;
  auto& sim = host().sim();
  if (!first_send_) {
    first_send_ = sim.now();
    host().trace(TraceKind::UdpStart, {}, config_.label);
  }
  host().send(frames::EthernetFrame::make(host().mac(), *resolved_, std::nullopt,
                                          frames::UdpDatagram{flow_, config_.dst, seq_, sim.now()},
                                          config_.frame_bytes));
  ++seq_;
  sim.schedule_in(config_.send_interval, host().id(), EventKind::Timer, [this] { emit(); });
}

// ---- UdpSink ----------------------------------------------------------------

bool UdpSink::on_frame(const frames::EthernetFrame& frame) {
  const auto* udp = frame.as<frames::UdpDatagram>();
  if (!udp || udp->dst != host().ip()) return false;
  ++received_;
  if (auto* sink = host().sink()) sink->record_latency(udp->flow, udp->seq, udp->sent_at, host().sim().now());
  return true;
}

}  // namespace tssdn::hosts
