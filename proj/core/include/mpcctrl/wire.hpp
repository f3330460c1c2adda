#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mpcctrl/message.hpp"

namespace mpcctrl::wire {

// Frame layout, all fields big-endian, fixed width:
//
//   session 8 | step 4 | summand 2 | round 2 | sender 1 | receiver 1 |
//   count 2 | count * (value 8 | scale 1)
//
// The framed-stream transport length-prefixes each (sealed) frame with a
// 4-byte big-endian length.
inline constexpr std::size_t kHeaderSize = 20;
inline constexpr std::size_t kPayloadEntrySize = 9;

std::size_t encoded_size(const Message& m);
std::vector<std::uint8_t> encode_frame(const Message& m);
Message decode_frame(std::span<const std::uint8_t> bytes);

// Authenticated encryption for the framed-stream channel (ChaCha20-
// Poly1305); the nonce is the per-channel frame counter. open() throws on
// any forgery or truncation.
inline constexpr std::size_t kSealOverhead = 16;
std::vector<std::uint8_t> seal(std::span<const std::uint8_t> plain,
                               const std::array<std::uint8_t, 32>& key, std::uint64_t counter);
std::vector<std::uint8_t> open(std::span<const std::uint8_t> sealed,
                               const std::array<std::uint8_t, 32>& key, std::uint64_t counter);

}  // namespace mpcctrl::wire
