#include "tssdn/scenario/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "tssdn/scenario/units.hpp"
#include "tssdn/srp/topology.hpp"

namespace tssdn::scenario {

namespace {

std::string format_error(const std::string& file, int line, const std::string& field, const std::string& message) {
  std::string out = file;
  if (line > 0) out += ":" + std::to_string(line);
  out += ": ";
  if (!field.empty()) out += field + ": ";
  return out + message;
}

int line_of(const YAML::Node& n) {
  const auto mark = n.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

/// Reads one YAML mapping, remembering where it came from for diagnostics.
class Section {
 public:
  Section(const YAML::Node& node, std::string path, const std::string& origin, std::set<std::string> allowed)
      : node_(node), path_(std::move(path)), origin_(origin) {
    if (!node_.IsMap()) fail("", "expected a mapping");
    std::set<std::string> seen;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) throw ConfigError(origin_, line_of(kv.first), field(key), "unknown field");
      if (!seen.insert(key).second) throw ConfigError(origin_, line_of(kv.first), field(key), "duplicate field");
      lines_[key] = line_of(kv.first);
    }
  }

  int line() const { return line_of(node_); }
  bool has(const std::string& key) const { return node_[key].IsDefined() && !node_[key].IsNull(); }
  YAML::Node raw(const std::string& key) const { return node_[key]; }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const std::map<std::string, int>& key_lines() const { return lines_; }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto n = key.empty() ? node_ : node_[key];
    throw ConfigError(origin_, n.IsDefined() ? line_of(n) : line(), key.empty() ? path_ : field(key), message);
  }

  template <class T>
  T convert(const std::string& key, const std::function<T(const std::string&)>& fn) const {
    const auto n = node_[key];
    if (!n.IsScalar()) fail(key, "expected a scalar value");
    try {
      return fn(n.as<std::string>());
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(key, e.what());
    }
  }

  std::string text(const std::string& key) const {
    return convert<std::string>(key, [](const std::string& s) { return s; });
  }
  std::string text(const std::string& key, const std::string& def) const { return has(key) ? text(key) : def; }

  template <class T>
  T required(const std::string& key, T (*fn)(const std::string&)) const {
    if (!has(key)) fail("", "missing required field '" + key + "'");
    return convert<T>(key, fn);
  }
  template <class T>
  T optional(const std::string& key, T def, T (*fn)(const std::string&)) const {
    return has(key) ? convert<T>(key, fn) : def;
  }

  const std::string& origin() const { return origin_; }

 private:
  YAML::Node node_;
  std::map<std::string, int> lines_;
  std::string path_;
  const std::string& origin_;
};

sim::SimTime to_time(const std::string& s) { return parse_time(s); }
std::int64_t to_rate(const std::string& s) { return parse_rate(s); }
frames::MacAddress to_mac(const std::string& s) { return frames::MacAddress::parse(s); }
frames::ProtocolAddress to_ip(const std::string& s) { return frames::ProtocolAddress::parse(s); }
std::string to_string_value(const std::string& s) { return s; }

std::uint64_t to_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("'" + s + "' is not a non-negative integer");
  return std::stoull(s);
}
std::uint64_t to_positive(const std::string& s) {
  const auto v = to_u64(s);
  if (v == 0) throw std::invalid_argument("must be positive");
  return v;
}
template <std::uint64_t Max>
std::uint64_t to_bounded(const std::string& s) {
  const auto v = to_u64(s);
  if (v > Max) throw std::invalid_argument("'" + s + "' exceeds " + std::to_string(Max));
  return v;
}
bool to_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("'" + s + "' is not a boolean");
}
double to_fraction(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || !(v > 0.0) || v > 1.0) throw std::invalid_argument("'" + s + "' is not in (0, 1]");
  return v;
}
srp::SrClassName to_class(const std::string& s) { return srp::parse_sr_class(s); }

LinkEnd to_link_end(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos || colon == 0) throw std::invalid_argument("'" + s + "' is not <node>:<port>");
  return {s.substr(0, colon), static_cast<sim::PortId>(to_bounded<1024>(s.substr(colon + 1)))};
}

}  // namespace

ConfigError::ConfigError(std::string file, int line, std::string field, const std::string& message)
    : std::runtime_error(format_error(file, line, field, message)),
      file_(std::move(file)),
      line_(line),
      field_(std::move(field)) {}

const ClientSpec* ScenarioConfig::client(const std::string& n) const {
  for (const auto& c : clients)
    if (c.name == n) return &c;
  return nullptr;
}

const SwitchSpec* ScenarioConfig::switch_spec(const std::string& n) const {
  for (const auto& s : switches)
    if (s.name == n) return &s;
  return nullptr;
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(origin, e.mark.line >= 0 ? e.mark.line + 1 : 0, "", e.msg);
  }
  if (!root.IsMap()) throw ConfigError(origin, 0, "", "top level must be a mapping");

  const Section top(root, "", origin,
                    {"name", "sdn", "shaper_disabled", "idle_setup", "run_until", "controller", "control_channel",
                     "clients", "switches", "links", "apps", "analysis", "output"});

  ScenarioConfig cfg;
  cfg.key_lines = top.key_lines();
  cfg.name = top.text("name", "scenario");
  cfg.sdn = top.required<bool>("sdn", to_bool);
  cfg.shaper_disabled = top.optional<bool>("shaper_disabled", false, to_bool);
  cfg.idle_setup = top.optional<sim::SimTime>("idle_setup", sim::SimTime::ms(100), to_time);
  cfg.run_until = top.required<sim::SimTime>("run_until", to_time);

  if (top.has("controller")) {
    const Section s(top.raw("controller"), "controller", origin, {"name"});
    cfg.controller = s.text("name", "controller");
  }
  if (top.has("control_channel")) {
    const Section s(top.raw("control_channel"), "control_channel", origin, {"one_way", "processing"});
    const auto def = control::default_channel_delays();
    cfg.control_channel = control::ChannelDelays{s.optional<sim::SimTime>("one_way", def.one_way, to_time),
                                                 s.optional<sim::SimTime>("processing", def.processing, to_time)};
  }

  const auto each = [&](const std::string& key, std::set<std::string> keys, const std::function<void(const Section&)>& fn,
                        const YAML::Node& parent) {
    const auto list = parent[key];
    if (!list.IsDefined() || list.IsNull()) return;
    if (!list.IsSequence()) throw ConfigError(origin, line_of(list), key, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) fn(Section(list[i], key + "[" + std::to_string(i) + "]", origin, keys));
  };

  each("clients", {"name", "mac", "ip", "processing_delay", "queue_capacity"}, [&](const Section& s) {
    ClientSpec c;
    c.name = s.required<std::string>("name", to_string_value);
    c.mac = s.required<frames::MacAddress>("mac", to_mac);
    c.ip = s.required<frames::ProtocolAddress>("ip", to_ip);
    c.processing_delay = s.optional<sim::SimTime>("processing_delay", {}, to_time);
    c.queue_capacity = s.optional<std::uint64_t>("queue_capacity", 100, to_positive);
    c.line = s.line();
    cfg.clients.push_back(c);
  }, root);

  each("switches", {"name", "ports", "queue_capacity", "admission_fraction"}, [&](const Section& s) {
    SwitchSpec w;
    w.name = s.required<std::string>("name", to_string_value);
    w.ports = s.optional<std::uint64_t>("ports", 2, to_bounded<1024>);
    if (w.ports == 0) s.fail("ports", "a switch needs at least one port");
    w.queue_capacity = s.optional<std::uint64_t>("queue_capacity", 100, to_positive);
    w.admission_fraction = s.optional<double>("admission_fraction", srp::kDefaultAdmissionFraction, to_fraction);
    w.line = s.line();
    cfg.switches.push_back(w);
  }, root);

  each("links", {"a", "b", "rate", "propagation"}, [&](const Section& s) {
    LinkSpec l;
    l.a = s.required<LinkEnd>("a", to_link_end);
    l.b = s.required<LinkEnd>("b", to_link_end);
    l.rate_bps = s.optional<std::int64_t>("rate", 100'000'000, to_rate);
    l.propagation = s.optional<sim::SimTime>("propagation", {}, to_time);
    l.line = s.line();
    cfg.links.push_back(l);
  }, root);

  if (top.has("apps")) {
    const Section apps(top.raw("apps"), "apps", origin, {"talkers", "listeners", "udp_sources", "udp_sinks"});
    const auto node = top.raw("apps");
    each("talkers",
         {"host", "stream_id", "dst_group", "vid", "pcp", "sr_class", "frame_bytes", "max_frame_bytes", "interval",
          "advertise_at", "listener_timeout", "count", "label"},
         [&](const Section& s) {
           TalkerSpec t;
           t.host = s.required<std::string>("host", to_string_value);
           t.stream_uid = static_cast<std::uint16_t>(s.required<std::uint64_t>("stream_id", to_bounded<65535>));
           t.dst_group = s.required<frames::MacAddress>("dst_group", to_mac);
           t.vid = static_cast<std::uint16_t>(s.optional<std::uint64_t>("vid", 2, to_bounded<4094>));
           t.sr_class = s.optional<srp::SrClassName>("sr_class", srp::SrClassName::ClassA, to_class);
           t.pcp = static_cast<std::uint8_t>(
               s.optional<std::uint64_t>("pcp", srp::sr_class(t.sr_class).pcp, to_bounded<7>));
           t.frame_bytes = static_cast<std::uint32_t>(s.optional<std::uint64_t>("frame_bytes", 150, to_positive));
           t.max_frame_bytes =
               static_cast<std::uint32_t>(s.optional<std::uint64_t>("max_frame_bytes", t.frame_bytes, to_positive));
           t.interval = s.optional<sim::SimTime>("interval", srp::sr_class(t.sr_class).default_interval, to_time);
           t.advertise_at = s.required<sim::SimTime>("advertise_at", to_time);
           t.listener_timeout = s.optional<sim::SimTime>("listener_timeout", sim::SimTime::ms(10), to_time);
           if (s.has("count")) t.count = s.convert<std::uint64_t>("count", to_u64);
           t.label = s.text("label", "stream");
           t.line = s.line();
           if (t.frame_bytes > frames::kMaxFrameBytes) s.fail("frame_bytes", "exceeds 1522 bytes");
           if (t.max_frame_bytes > frames::kMaxFrameBytes) s.fail("max_frame_bytes", "exceeds 1522 bytes");
           if (t.frame_bytes > t.max_frame_bytes) s.fail("frame_bytes", "exceeds max_frame_bytes");
           if (t.interval == sim::SimTime{}) s.fail("interval", "must be positive");
           if (!t.dst_group.is_multicast()) s.fail("dst_group", "stream destination must be a group address");
           cfg.talkers.push_back(t);
         },
         node);
    each("listeners", {"host", "talker", "stream_id"}, [&](const Section& s) {
      ListenerSpec l;
      l.host = s.required<std::string>("host", to_string_value);
      l.talker = s.required<std::string>("talker", to_string_value);
      l.stream_uid = static_cast<std::uint16_t>(s.required<std::uint64_t>("stream_id", to_bounded<65535>));
      l.line = s.line();
      cfg.listeners.push_back(l);
    }, node);
    each("udp_sources",
         {"host", "dst", "frame_bytes", "send_interval", "start_at", "start_offset", "count", "arp_timeout",
          "arp_retries", "label"},
         [&](const Section& s) {
           UdpSourceSpec u;
           u.host = s.required<std::string>("host", to_string_value);
           u.dst = s.required<frames::ProtocolAddress>("dst", to_ip);
           u.frame_bytes = static_cast<std::uint32_t>(s.optional<std::uint64_t>("frame_bytes", 1000, to_positive));
           if (u.frame_bytes > frames::kMaxFrameBytes) s.fail("frame_bytes", "exceeds 1522 bytes");
           u.send_interval = s.optional<sim::SimTime>("send_interval", sim::SimTime::us(100), to_time);
           if (u.send_interval == sim::SimTime{}) s.fail("send_interval", "must be positive");
           u.start_at = s.required<sim::SimTime>("start_at", to_time);
           u.start_offset = s.optional<sim::SimTime>("start_offset", {}, to_time);
           if (s.has("count")) u.count = s.convert<std::uint64_t>("count", to_u64);
           u.arp_timeout = s.optional<sim::SimTime>("arp_timeout", sim::SimTime::ms(1), to_time);
           if (u.arp_timeout == sim::SimTime{}) s.fail("arp_timeout", "must be positive");
           u.arp_retries = static_cast<int>(s.optional<std::uint64_t>("arp_retries", 3, to_bounded<100>));
           u.label = s.text("label", "udp");
           u.line = s.line();
           cfg.udp_sources.push_back(u);
         },
         node);
    each("udp_sinks", {"host"}, [&](const Section& s) {
      cfg.udp_sinks.push_back({s.required<std::string>("host", to_string_value), s.line()});
    }, node);
  }

  if (top.has("analysis")) {
    const Section s(top.raw("analysis"), "analysis", origin, {"window_start", "window_end", "convergence_bound"});
    if (s.has("window_start")) cfg.analysis.window_start = s.convert<sim::SimTime>("window_start", to_time);
    if (s.has("window_end")) cfg.analysis.window_end = s.convert<sim::SimTime>("window_end", to_time);
    cfg.analysis.convergence_bound = s.optional<sim::SimTime>("convergence_bound", sim::SimTime::ms(10), to_time);
  }
  if (top.has("output")) {
    const Section s(top.raw("output"), "output", origin, {"dir"});
    if (s.has("dir")) cfg.output_dir = s.text("dir");
  }

  validate(cfg, origin);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "", "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  auto cfg = parse_config(buf.str(), path.string());
  cfg.source = path;
  if (cfg.output_dir && cfg.output_dir->is_relative()) cfg.output_dir = path.parent_path() / *cfg.output_dir;
  return cfg;
}

void validate(const ScenarioConfig& cfg, const std::string& origin) {
  const auto fail = [&](int line, const std::string& field, const std::string& msg) {
    throw ConfigError(origin, line, field, msg);
  };

  const auto line_of_key = [&](const std::string& key) {
    auto it = cfg.key_lines.find(key);
    return it == cfg.key_lines.end() ? 0 : it->second;
  };

  if (!cfg.sdn && cfg.controller)
    fail(line_of_key("controller"), "controller", "a controller is not permitted when sdn is false");
  if (!cfg.sdn && cfg.control_channel)
    fail(line_of_key("control_channel"), "control_channel", "control channels are not permitted when sdn is false");
  if (cfg.sdn && !cfg.controller) fail(line_of_key("sdn"), "controller", "sdn is true but no controller is configured");
  if (cfg.run_until == sim::SimTime{}) fail(line_of_key("run_until"), "run_until", "must be positive");

  // node names, addresses
  std::map<std::string, std::size_t> ports;
  std::set<frames::MacAddress> macs;
  std::set<frames::ProtocolAddress> ips;
  for (std::size_t i = 0; i < cfg.clients.size(); ++i) {
    const auto& c = cfg.clients[i];
    const auto f = "clients[" + std::to_string(i) + "]";
    if (!ports.emplace(c.name, 1).second) fail(c.line, f + ".name", "duplicate node name '" + c.name + "'");
    if (c.mac.is_multicast()) fail(c.line, f + ".mac", "host address must be unicast");
    if (!macs.insert(c.mac).second) fail(c.line, f + ".mac", "duplicate MAC " + c.mac.to_string());
    if (!ips.insert(c.ip).second) fail(c.line, f + ".ip", "duplicate address " + c.ip.to_string());
  }
  for (std::size_t i = 0; i < cfg.switches.size(); ++i) {
    const auto& s = cfg.switches[i];
    if (!ports.emplace(s.name, s.ports).second)
      fail(s.line, "switches[" + std::to_string(i) + "].name", "duplicate node name '" + s.name + "'");
  }
  if (cfg.controller && ports.contains(*cfg.controller))
    fail(0, "controller.name", "duplicate node name '" + *cfg.controller + "'");
  if (ports.empty()) fail(0, "clients", "no nodes configured");

  // links
  std::set<std::pair<std::string, sim::PortId>> used;
  srp::Topology topo;
  for (const auto& [name, n] : ports) topo.add_node(name);
  for (std::size_t i = 0; i < cfg.links.size(); ++i) {
    const auto& l = cfg.links[i];
    const auto f = "links[" + std::to_string(i) + "]";
    for (const auto* end : {&l.a, &l.b}) {
      const auto side = f + (end == &l.a ? ".a" : ".b");
      auto it = ports.find(end->node);
      if (it == ports.end()) fail(l.line, side, "unknown node '" + end->node + "'");
      if (end->port >= it->second)
        fail(l.line, side, "port " + std::to_string(end->port) + " out of range for '" + end->node + "'");
      if (!used.emplace(end->node, end->port).second)
        fail(l.line, side, "port " + std::to_string(end->port) + " of '" + end->node + "' is already connected");
    }
    if (l.a.node == l.b.node) fail(l.line, f, "link connects a node to itself");
    topo.add_edge(l.a.node, l.b.node);
  }
  if (!topo.connected()) fail(0, "links", "topology is not connected");

  // apps
  const auto need_client = [&](const std::string& host, int line, const std::string& field) {
    if (!cfg.client(host)) fail(line, field, "'" + host + "' is not a client");
  };
  std::set<std::pair<std::string, std::uint16_t>> streams;
  for (std::size_t i = 0; i < cfg.talkers.size(); ++i) {
    const auto& t = cfg.talkers[i];
    const auto f = "apps.talkers[" + std::to_string(i) + "]";
    need_client(t.host, t.line, f + ".host");
    if (!streams.emplace(t.host, t.stream_uid).second)
      fail(t.line, f + ".stream_id", "duplicate stream id " + std::to_string(t.stream_uid) + " on " + t.host);
    if (t.advertise_at < cfg.idle_setup) fail(t.line, f + ".advertise_at", "must not precede idle_setup");
  }
  for (std::size_t i = 0; i < cfg.listeners.size(); ++i) {
    const auto& l = cfg.listeners[i];
    const auto f = "apps.listeners[" + std::to_string(i) + "]";
    need_client(l.host, l.line, f + ".host");
    if (!streams.contains({l.talker, l.stream_uid}))
      fail(l.line, f + ".stream_id", "no talker '" + l.talker + "' with stream id " + std::to_string(l.stream_uid));
    if (l.host == l.talker) fail(l.line, f + ".host", "listener and talker are the same host");
  }
  for (std::size_t i = 0; i < cfg.udp_sources.size(); ++i) {
    const auto& u = cfg.udp_sources[i];
    const auto f = "apps.udp_sources[" + std::to_string(i) + "]";
    need_client(u.host, u.line, f + ".host");
    if (u.start_at < cfg.idle_setup) fail(u.line, f + ".start_at", "must not precede idle_setup");
  }
  for (std::size_t i = 0; i < cfg.udp_sinks.size(); ++i)
    need_client(cfg.udp_sinks[i].host, cfg.udp_sinks[i].line, "apps.udp_sinks[" + std::to_string(i) + "].host");

  if (cfg.analysis.window_start && cfg.analysis.window_end && *cfg.analysis.window_end <= *cfg.analysis.window_start)
    fail(0, "analysis.window_end", "window is empty");
}

}  // namespace tssdn::scenario
