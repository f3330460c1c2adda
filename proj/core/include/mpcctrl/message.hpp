#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mpcctrl/modring.hpp"

namespace mpcctrl {

enum class Role : std::uint8_t { distributor = 0, server = 1, collector = 2 };
const char* role_name(Role role);

// Party address. The distributor (sensor side) and collector (actuator
// side) are singletons; servers carry a 1-based pool index.
struct PartyId {
  Role role = Role::distributor;
  std::uint8_t index = 0;

  static PartyId distributor() { return {Role::distributor, 0}; }
  static PartyId server(std::uint8_t index);
  static PartyId collector() { return {Role::collector, 0}; }

  // 0x00 distributor, 0x01..0xFE server index, 0xFF collector.
  std::uint8_t wire_byte() const;
  static PartyId from_wire_byte(std::uint8_t b);

  friend bool operator==(const PartyId&, const PartyId&) = default;
};

// One framed protocol payload. Round numbering within a summand instance:
// 0 = distribution, then per multiplication round k the zero-share
// exchange (communication mode only) uses 2k-1 and the circular hand-off
// 2k; result shares travel at round 2m-3 (three-party, m factors) or 1
// (n-party and constant pieces).
struct Message {
  std::uint64_t session = 0;
  std::uint32_t step = 0;
  std::uint16_t summand = 0;
  std::uint16_t round = 0;
  PartyId sender;
  PartyId receiver;
  std::vector<ScaledResidue> payload;

  friend bool operator==(const Message&, const Message&) = default;
};

struct OpCounts {
  std::uint64_t mod_adds = 0;
  std::uint64_t mod_muls = 0;
  std::uint64_t rng_draws = 0;
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;

  OpCounts& operator+=(const OpCounts& other);
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

// Per-role work and traffic accounting for one session. Counters only ever
// grow while the session runs.
struct RunMetrics {
  std::array<OpCounts, 3> by_role{};

  OpCounts& at(Role role) { return by_role[static_cast<std::size_t>(role)]; }
  const OpCounts& at(Role role) const { return by_role[static_cast<std::size_t>(role)]; }
  OpCounts total() const;

  RunMetrics& operator+=(const RunMetrics& other);
  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

}  // namespace mpcctrl
