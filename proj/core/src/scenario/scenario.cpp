#include "tssdn/scenario/scenario.hpp"

#include <algorithm>

#include "tssdn/srp/topology.hpp"

namespace tssdn::scenario {

std::uint64_t RunResult::stream_misses() const {
  std::uint64_t n = 0;
  for (const auto& c : switch_counters) n += c.stream_miss;
  return n;
}

const StreamInfo* RunResult::stream(const std::string& label) const {
  for (const auto& s : streams)
    if (s.label == label) return &s;
  return nullptr;
}

const UdpInfo* RunResult::udp_flow(const std::string& label) const {
  for (const auto& u : udp)
    if (u.label == label) return &u;
  return nullptr;
}

Scenario::Scenario(const ScenarioConfig& cfg, bool pipeline_tracing) : cfg_(cfg), net_(sim_) {
  sink_.set_pipeline_tracing(pipeline_tracing);

  if (cfg_.sdn) {
    controller_ = &net_.emplace_node<control::Controller>(sim_, control::ControllerConfig{*cfg_.controller}, &sink_);
  }

  for (const auto& s : cfg_.switches) {
    switching::SwitchConfig sc;
    sc.name = s.name;
    sc.ports = s.ports;
    sc.queue_capacity = s.queue_capacity;
    sc.admission_fraction = s.admission_fraction;
    sc.sdn = cfg_.sdn;
    sc.shaper_disabled = cfg_.shaper_disabled;
    auto& sw = net_.emplace_node<switching::TssdnSwitch>(sim_, sc, &sink_);
    switches_[s.name] = &sw;
    if (controller_) {
      auto ch = std::make_unique<control::ControlChannel>(sim_, channels_.size(), s.name, cfg_.channel_delays(), &sink_);
      ch->bind(controller_, controller_->id(), &sw, sw.id());
      controller_->add_channel(ch.get());
      sw.attach_controller(ch.get());
      channels_.push_back(std::move(ch));
    }
  }

  for (const auto& c : cfg_.clients) {
    hosts::HostConfig hc;
    hc.name = c.name;
    hc.mac = c.mac;
    hc.ip = c.ip;
    hc.processing_delay = c.processing_delay;
    hc.queue_capacity = c.queue_capacity;
    hc.shaper_disabled = cfg_.shaper_disabled;
    hosts_[c.name] = &net_.emplace_node<hosts::Host>(sim_, hc, &sink_);
  }

  srp::Topology topo;
  for (const auto& c : cfg_.clients) topo.add_node(c.name);
  for (const auto& s : cfg_.switches) topo.add_node(s.name);
  for (const auto& l : cfg_.links) {
    const auto a = net_.find(l.a.node)->id();
    const auto b = net_.find(l.b.node)->id();
    net_.connect({a, l.a.port}, {b, l.b.port}, {l.rate_bps, l.propagation});
    topo.add_edge(l.a.node, l.b.node);
    for (const auto* end : {&l.a, &l.b}) {
      if (auto it = switches_.find(end->node); it != switches_.end()) it->second->set_port_rate(end->port, l.rate_bps);
      if (auto it = hosts_.find(end->node); it != hosts_.end()) it->second->set_port_rate(l.rate_bps);
    }
  }

  for (const auto& t : cfg_.talkers) {
    auto& h = *hosts_.at(t.host);
    hosts::TalkerConfig tc;
    tc.stream.id = {h.mac(), t.stream_uid};
    tc.stream.dst_group = t.dst_group;
    tc.stream.vlan = frames::VlanTag::make(t.vid, t.pcp);
    tc.stream.max_frame_bytes = t.max_frame_bytes;
    tc.stream.interval = t.interval;
    tc.stream.sr_class = t.sr_class;
    tc.frame_bytes = t.frame_bytes;
    tc.advertise_at = t.advertise_at;
    tc.listener_timeout = t.listener_timeout;
    tc.count = t.count;
    tc.label = t.label;
    talkers_.push_back(&h.add_app<hosts::Talker>(tc));

    StreamInfo info;
    info.label = t.label;
    info.id = tc.stream.id;
    info.talker = t.host;
    info.sr_class = srp::sr_class(t.sr_class);
    for (const auto& l : cfg_.listeners) {
      if (l.talker != t.host || l.stream_uid != t.stream_uid) continue;
      info.listeners.push_back(l.host);
      info.scheduled_ports = std::max(info.scheduled_ports, srp::count_scheduled_ports(topo, t.host, l.host));
    }
    stream_info_.push_back(info);
  }
  for (const auto& l : cfg_.listeners) {
    const srp::StreamId id{hosts_.at(l.talker)->mac(), l.stream_uid};
    listeners_.push_back(&hosts_.at(l.host)->add_app<hosts::Listener>(id));
  }
  for (const auto& u : cfg_.udp_sources) {
    auto& h = *hosts_.at(u.host);
    hosts::UdpSourceConfig uc;
    uc.dst = u.dst;
    uc.frame_bytes = u.frame_bytes;
    uc.send_interval = u.send_interval;
    uc.start_at = u.start_at;
    uc.start_offset = u.start_offset;
    uc.count = u.count;
    uc.arp_timeout = u.arp_timeout;
    uc.arp_retries = u.arp_retries;
    uc.label = u.label;
    udp_sources_.push_back(&h.add_app<hosts::UdpSource>(uc));

    UdpInfo info;
    info.label = u.label;
    info.source = u.host;
    info.src_mac = h.mac();
    for (const auto& c : cfg_.clients)
      if (c.ip == u.dst) info.dst_mac = c.mac;
    udp_info_.push_back(info);
  }
  for (const auto& s : cfg_.udp_sinks) hosts_.at(s.host)->add_app<hosts::UdpSink>();

  if (controller_) {
    sim_.schedule(sim::SimTime{}, controller_->id(), sim::EventKind::Timer, [c = controller_] { c->bootstrap(); });
  }
  for (const auto& c : cfg_.clients) hosts_.at(c.name)->start();
}

Scenario::~Scenario() = default;

switching::TssdnSwitch& Scenario::switch_node(const std::string& name) const { return *switches_.at(name); }
hosts::Host& Scenario::host(const std::string& name) const { return *hosts_.at(name); }

void Scenario::run_until(sim::SimTime t) { sim_.run_until(t); }

RunResult Scenario::result() const {
  RunResult r;
  r.name = cfg_.name;
  r.sdn = cfg_.sdn;
  r.until = sim_.now();
  r.records = sink_.records();
  r.control_trace = sink_.control_trace();
  r.events = sink_.events();
  r.warnings = sink_.warnings();
  for (const auto& s : cfg_.switches) {
    const auto& sw = *switches_.at(s.name);
    r.switch_counters.push_back(sw.counters());
    r.flow_mods[s.name] = sw.flow_mods();
  }
  for (const auto& c : cfg_.clients) r.host_counters.push_back({c.name, hosts_.at(c.name)->counters()});
  if (controller_) r.controller_counters = controller_->counters();

  r.streams = stream_info_;
  for (std::size_t i = 0; i < talkers_.size(); ++i) {
    r.streams[i].listener_ready_at = talkers_[i]->listener_ready_at();
    r.streams[i].first_send = talkers_[i]->first_send();
    r.streams[i].sent = talkers_[i]->sent();
  }
  r.udp = udp_info_;
  for (std::size_t i = 0; i < udp_sources_.size(); ++i) {
    r.udp[i].resolved_at = udp_sources_[i]->resolved_at();
    r.udp[i].first_send = udp_sources_[i]->first_send();
    r.udp[i].sent = udp_sources_[i]->sent();
  }
  r.dispatch_hash = sim_.trace_hash();
  r.events_dispatched = sim_.dispatched();
  return r;
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
  Scenario s(cfg, options.pipeline_tracing);
  s.sim().keep_dispatch_log(options.keep_dispatch_log);
  s.run_until(options.until.value_or(cfg.run_until));
  return s.result();
}

}  // namespace tssdn::scenario
