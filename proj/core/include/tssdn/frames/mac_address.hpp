#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace tssdn::frames {

class MacAddress {
 public:
  constexpr MacAddress() = default;
  constexpr explicit MacAddress(std::array<std::uint8_t, 6> octets) : octets_(octets) {}

  /// Parses "01:00:5E:00:00:01" (also accepts '-' separators). Throws std::invalid_argument.
  static MacAddress parse(std::string_view text);
  static constexpr MacAddress broadcast() { return MacAddress{{0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF}}; }

  /// I/G bit: least-significant bit of the first octet.
  constexpr bool is_multicast() const { return (octets_[0] & 0x01) != 0; }
  constexpr bool is_broadcast() const { return *this == broadcast(); }

  constexpr const std::array<std::uint8_t, 6>& octets() const { return octets_; }
  std::uint64_t to_u64() const;
  std::string to_string() const;

  constexpr auto operator<=>(const MacAddress&) const = default;

 private:
  std::array<std::uint8_t, 6> octets_{};
};

inline bool is_multicast(const MacAddress& addr) { return addr.is_multicast(); }

std::ostream& operator<<(std::ostream& os, const MacAddress& mac);

/// Abstract layer-3 address used by ARP and UDP (dotted quad notation).
struct ProtocolAddress {
  std::uint32_t value = 0;

  static ProtocolAddress parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const ProtocolAddress&) const = default;
};

}  // namespace tssdn::frames

template <>
struct std::hash<tssdn::frames::MacAddress> {
  std::size_t operator()(const tssdn::frames::MacAddress& m) const noexcept {
    return std::hash<std::uint64_t>{}(m.to_u64());
  }
};
