#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include "fabsim/error.hpp"
#include "fabsim/time.hpp"

namespace fabsim {

struct MacAddress {
  std::array<std::uint8_t, 6> octets{};

  bool is_multicast() const { return (octets[0] & 0x01) != 0; }
  bool is_broadcast() const {
    for (auto o : octets)
      if (o != 0xff) return false;
    return true;
  }

  std::string str() const {
    char buf[18];
    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", octets[0],
                  octets[1], octets[2], octets[3], octets[4], octets[5]);
    return buf;
  }

  auto operator<=>(const MacAddress&) const = default;
};

inline MacAddress make_mac(std::uint8_t a, std::uint8_t b, std::uint8_t c,
                           std::uint8_t d, std::uint8_t e, std::uint8_t f) {
  return MacAddress{{a, b, c, d, e, f}};
}

inline MacAddress broadcast_mac() {
  return make_mac(0xff, 0xff, 0xff, 0xff, 0xff, 0xff);
}

// Deterministic unicast address for the n-th simulated node
// (locally administered, so it cannot collide with a vendor prefix).
inline MacAddress node_mac(std::uint32_t n) {
  return make_mac(0x02, 0x00, std::uint8_t(n >> 24), std::uint8_t(n >> 16),
                  std::uint8_t(n >> 8), std::uint8_t(n));
}

struct VlanTag {
  std::uint16_t vlan_id = 1;  // 1..4094
  std::uint8_t priority = 0;  // 0..7, 7 highest

  bool operator==(const VlanTag&) const = default;
};

enum class FrameKind : std::uint8_t { Data, Pause, Resume };

constexpr std::uint32_t kMinFrameBytes = 64;
constexpr std::uint32_t kMaxFrameBytes = 1518;
// Preamble + inter-frame gap occupy the line beyond the MAC frame itself.
constexpr std::uint32_t kWireOverheadBytes = 20;

struct DfMessage;  // dataflow protocol envelope, defined in dataflow.hpp

struct Frame {
  MacAddress src;
  MacAddress dst;
  std::optional<VlanTag> tag;
  std::uint32_t size_bytes = kMinFrameBytes;  // MAC frame size on the wire
  FrameKind kind = FrameKind::Data;
  std::uint64_t flow_id = 0;
  SimTime injected_at = 0;
  std::uint64_t seq = 0;  // per-flow ordering check
  std::shared_ptr<const DfMessage> msg;
  std::uint32_t chunk_index = 0;
  std::uint32_t chunk_count = 1;

  std::uint32_t wire_bytes() const { return size_bytes + kWireOverheadBytes; }
  std::uint8_t priority() const { return tag ? tag->priority : 0; }

  void validate() const {
    if (size_bytes < kMinFrameBytes || size_bytes > kMaxFrameBytes)
      throw ConfigError("frame size " + std::to_string(size_bytes) +
                        " outside 64..1518");
    if (kind != FrameKind::Data && (tag.has_value() || size_bytes != kMinFrameBytes))
      throw ModelError("pause/resume frames must be untagged 64-byte frames");
  }
};

inline Frame make_pause_frame(bool pause, const MacAddress& src) {
  Frame f;
  f.kind = pause ? FrameKind::Pause : FrameKind::Resume;
  f.src = src;
  f.dst = make_mac(0x01, 0x80, 0xc2, 0x00, 0x00, 0x01);
  f.size_bytes = kMinFrameBytes;
  return f;
}

}  // namespace fabsim
