#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

#include "mpcctrl/polynomial.hpp"
#include "mpcctrl/rng.hpp"

namespace mpcctrl::test {

using BigInt = boost::multiprecision::cpp_int;

// Hands out pre-scripted draws; uniform(bound) returns the next scripted
// value verbatim (tests inject in-range values).
class QueueRandomness final : public Randomness {
 public:
  explicit QueueRandomness(std::vector<std::uint64_t> values)
      : values_(values.begin(), values.end()) {}

  std::uint64_t next_u64() override { return take(); }
  std::uint64_t uniform(std::uint64_t bound) override {
    const std::uint64_t v = take();
    if (v >= bound) throw std::logic_error("QueueRandomness: scripted draw out of range");
    return v;
  }

 private:
  std::uint64_t take() {
    if (values_.empty()) throw std::logic_error("QueueRandomness: script exhausted");
    const std::uint64_t v = values_.front();
    values_.pop_front();
    return v;
  }

  std::deque<std::uint64_t> values_;
};

// Arbitrary-precision oracles, independent of the uint64/__int128 path.
inline std::uint64_t oracle_mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(BigInt(a) * b % q);
}

inline std::uint64_t oracle_add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>((BigInt(a) + b) % q);
}

inline std::uint64_t oracle_product_mod(std::span<const ScaledResidue> factors,
                                        std::uint64_t q) {
  BigInt acc = 1;
  for (const auto& f : factors) acc = acc * f.value % q;
  return static_cast<std::uint64_t>(acc);
}

// The cubic two-state law used across the suites (matches laws/cubic2d.law).
inline PolynomialLaw cubic_law() {
  PolynomialLaw law;
  law.state_dim = 2;
  law.terms = {
      {1.6973, {1, 0}},  {-12.2838, {0, 1}}, {-0.2122, {2, 0}},
      {-2.6975, {1, 1}}, {1.9631, {0, 2}},   {0.7721, {3, 0}},
      {-4.6034, {2, 1}}, {0.2959, {1, 2}},   {-2.3850, {0, 3}},
  };
  return law;
}

inline FixedPointFormat cubic_format() { return FixedPointFormat(10, 2, 4, 3); }

}  // namespace mpcctrl::test
