#include "mpcctrl/rng.hpp"

#include <sodium.h>

#include <stdexcept>

namespace mpcctrl {

namespace {

std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Randomness::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Randomness::uniform: zero bound");
  ++draws_;
  if (bound == 1) return 0;
  // Largest w with w+1 a multiple of bound; values above it would bias the
  // remainder.
  const std::uint64_t rem = (UINT64_MAX % bound + 1) % bound;
  const std::uint64_t zone = UINT64_MAX - rem;
  std::uint64_t w;
  do {
    w = next_u64();
  } while (w > zone);
  return w % bound;
}

std::uint64_t SeededRandomness::next_u64() { return splitmix64_step(state_); }

SystemRandomness::SystemRandomness() {
  if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
}

std::uint64_t SystemRandomness::next_u64() {
  std::uint64_t w;
  randombytes_buf(&w, sizeof w);
  return w;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t state = seed ^ (0xA0761D6478BD642Full * (tag + 1));
  splitmix64_step(state);
  return splitmix64_step(state);
}

}  // namespace mpcctrl
