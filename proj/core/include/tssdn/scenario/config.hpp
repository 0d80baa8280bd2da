#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tssdn/control/control_channel.hpp"
#include "tssdn/frames/frame.hpp"
#include "tssdn/srp/reservation.hpp"

namespace tssdn::scenario {

/// Validation or parse failure; what() reads "<file>:<line>: <field>: <message>".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string file, int line, std::string field, const std::string& message);

  const std::string& file() const { return file_; }
  int line() const { return line_; }  // 1-based, 0 when unknown
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  int line_;
  std::string field_;
};

struct ClientSpec {
  std::string name;
  frames::MacAddress mac;
  frames::ProtocolAddress ip;
  sim::SimTime processing_delay;
  std::size_t queue_capacity = 100;
  int line = 0;
};

struct SwitchSpec {
  std::string name;
  std::size_t ports = 2;
  std::size_t queue_capacity = 100;
  double admission_fraction = srp::kDefaultAdmissionFraction;
  int line = 0;
};

struct LinkEnd {
  std::string node;
  sim::PortId port = 0;
};

struct LinkSpec {
  LinkEnd a;
  LinkEnd b;
  std::int64_t rate_bps = 100'000'000;
  sim::SimTime propagation;
  int line = 0;
};

struct TalkerSpec {
  std::string host;
  std::uint16_t stream_uid = 0;
  frames::MacAddress dst_group;
  std::uint16_t vid = 2;
  std::uint8_t pcp = 6;
  srp::SrClassName sr_class = srp::SrClassName::ClassA;
  std::uint32_t frame_bytes = 150;
  std::uint32_t max_frame_bytes = 150;
  sim::SimTime interval = sim::SimTime::us(125);
  sim::SimTime advertise_at;
  sim::SimTime listener_timeout = sim::SimTime::ms(10);
  std::optional<std::uint64_t> count;
  std::string label = "stream";
  int line = 0;
};

struct ListenerSpec {
  std::string host;
  std::string talker;  // talker host name
  std::uint16_t stream_uid = 0;
  int line = 0;
};

struct UdpSourceSpec {
  std::string host;
  frames::ProtocolAddress dst;
  std::uint32_t frame_bytes = 1000;
  sim::SimTime send_interval = sim::SimTime::us(100);
  sim::SimTime start_at;
  sim::SimTime start_offset;
  std::optional<std::uint64_t> count;
  sim::SimTime arp_timeout = sim::SimTime::ms(1);
  int arp_retries = 3;
  std::string label = "udp";
  int line = 0;
};

struct UdpSinkSpec {
  std::string host;
  int line = 0;
};

struct AnalysisSpec {
  std::optional<sim::SimTime> window_start;  // default: 0
  std::optional<sim::SimTime> window_end;    // default: run_until
  sim::SimTime convergence_bound = sim::SimTime::ms(10);
};

struct ScenarioConfig {
  std::string name;
  std::filesystem::path source;  // file the config was loaded from, if any
  bool sdn = false;
  bool shaper_disabled = false;  // fault injection: every egress port is a plain FIFO
  sim::SimTime idle_setup = sim::SimTime::ms(100);
  sim::SimTime run_until = sim::SimTime::ms(200);

  std::optional<std::string> controller;  // controller name, SDN only
  std::optional<control::ChannelDelays> control_channel;

  std::vector<ClientSpec> clients;
  std::vector<SwitchSpec> switches;
  std::vector<LinkSpec> links;
  std::vector<TalkerSpec> talkers;
  std::vector<ListenerSpec> listeners;
  std::vector<UdpSourceSpec> udp_sources;
  std::vector<UdpSinkSpec> udp_sinks;
  AnalysisSpec analysis;
  std::optional<std::filesystem::path> output_dir;
  std::map<std::string, int> key_lines;  // top-level key -> line, for diagnostics

  control::ChannelDelays channel_delays() const {
    return control_channel.value_or(control::default_channel_delays());
  }
  const ClientSpec* client(const std::string& name) const;
  const SwitchSpec* switch_spec(const std::string& name) const;
};

ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Checks every cross-field invariant; throws ConfigError. parse_config calls it.
void validate(const ScenarioConfig& cfg, const std::string& origin = "<config>");

}  // namespace tssdn::scenario
