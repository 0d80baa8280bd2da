#include "tssdn/frames/mac_address.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace tssdn::frames {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

MacAddress MacAddress::parse(std::string_view text) {
  std::array<std::uint8_t, 6> out{};
  if (text.size() != 17) throw std::invalid_argument("malformed MAC address '" + std::string(text) + "'");
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t at = i * 3;
    const int hi = hex_digit(text[at]);
    const int lo = hex_digit(text[at + 1]);
    if (hi < 0 || lo < 0 || (i < 5 && text[at + 2] != ':' && text[at + 2] != '-')) {
      throw std::invalid_argument("malformed MAC address '" + std::string(text) + "'");
    }
    out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return MacAddress{out};
}

std::uint64_t MacAddress::to_u64() const {
  std::uint64_t v = 0;
  for (auto o : octets_) v = (v << 8) | o;
  return v;
}

std::string MacAddress::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02X:%02X:%02X:%02X:%02X:%02X", octets_[0], octets_[1], octets_[2], octets_[3],
                octets_[4], octets_[5]);
  return buf;
}

std::ostream& operator<<(std::ostream& os, const MacAddress& mac) { return os << mac.to_string(); }

ProtocolAddress ProtocolAddress::parse(std::string_view text) {
  std::uint32_t value = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 4; ++i) {
    unsigned octet = 0;
    auto [next, ec] = std::from_chars(p, end, octet);
    if (ec != std::errc{} || octet > 255 || next == p) {
      throw std::invalid_argument("malformed protocol address '" + std::string(text) + "'");
    }
    value = (value << 8) | octet;
    p = next;
    if (i < 3) {
      if (p == end || *p != '.') throw std::invalid_argument("malformed protocol address '" + std::string(text) + "'");
      ++p;
    }
  }
  if (p != end) throw std::invalid_argument("malformed protocol address '" + std::string(text) + "'");
  return ProtocolAddress{value};
}

std::string ProtocolAddress::to_string() const {
  return std::to_string(value >> 24) + "." + std::to_string((value >> 16) & 0xFF) + "." +
         std::to_string((value >> 8) & 0xFF) + "." + std::to_string(value & 0xFF);
}

}  // namespace tssdn::frames
