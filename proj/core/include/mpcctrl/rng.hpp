#pragma once

#include <cstdint>

namespace mpcctrl {

// Uniform randomness source. Protocol code only ever asks for bounded
// draws; rejection sampling keeps them exactly uniform for any bound.
class Randomness {
 public:
  virtual ~Randomness() = default;

  virtual std::uint64_t next_u64() = 0;

  // Uniform draw from [0, bound), bound >= 1. Counted as one logical draw
  // regardless of how many words rejection sampling consumes.
  virtual std::uint64_t uniform(std::uint64_t bound);

  std::uint64_t draw_count() const { return draws_; }

 private:
  std::uint64_t draws_ = 0;
};

// Deterministic splitmix64 stream for reproducible protocol runs.
class SeededRandomness final : public Randomness {
 public:
  explicit SeededRandomness(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64() override;

 private:
  std::uint64_t state_;
};

// Operating-system CSPRNG, for deployments where reproducibility is not
// wanted.
class SystemRandomness final : public Randomness {
 public:
  SystemRandomness();
  std::uint64_t next_u64() override;
};

// One splitmix64 scramble; also used to derive independent per-party
// streams from a session seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace mpcctrl
