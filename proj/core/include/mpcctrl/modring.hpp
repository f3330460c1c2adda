#pragma once

#include <cstdint>

namespace mpcctrl {

// Largest supported modulus. Residue sums then fit a uint64 and products a
// 128-bit intermediate, so every operation is exact.
inline constexpr std::uint64_t kMaxModulus = 1ull << 63;

// Ring context shared by all modular arithmetic: the modulus Q and the
// radix used for scale bookkeeping.
struct ModRing {
  std::uint64_t modulus = 0;
  std::uint32_t radix = 10;

  friend bool operator==(const ModRing&, const ModRing&) = default;
};

// Element of Z_Q tagged with its scale exponent k: the represented real is
// signed(value) * radix^-k, negatives stored as the radix complement.
// Scales add under multiplication and must match under addition.
struct ScaledResidue {
  std::uint64_t value = 0;
  std::uint32_t scale = 0;

  friend bool operator==(const ScaledResidue&, const ScaledResidue&) = default;
};

// Work counters threaded through the protocol hot paths so runs can report
// exact per-role operation counts. Subtractions count as additions.
struct OpCounter {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
};

// Value-level arithmetic; operands must already be reduced mod q.
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t pow_mod(std::uint64_t base, std::uint32_t exp, std::uint64_t q);

// Scale-checked residue arithmetic. Addition and subtraction require equal
// scales (a mismatch signals an orchestration bug and throws); callers
// rescale first. Multiplication is exact and adds scales.
ScaledResidue mod_add(const ScaledResidue& a, const ScaledResidue& b, const ModRing& ring);
ScaledResidue mod_sub(const ScaledResidue& a, const ScaledResidue& b, const ModRing& ring);
ScaledResidue mod_mul(const ScaledResidue& a, const ScaledResidue& b, const ModRing& ring);

// Multiplies by radix^(target_scale - a.scale) so the value can join
// additions at a coarser scale. Downscaling would truncate fractional
// digits and is rejected.
ScaledResidue rescale(const ScaledResidue& a, std::uint32_t target_scale, const ModRing& ring);

// Fixed-point number format. Given the radix beta, the fractional digits
// carried by states and coefficients, the integer digits reserved for the
// result, and the polynomial degree the encoding must survive, it derives
//
//   Q     = beta^(integer_digits + (degree+1) * fractional_digits)
//   Delta = beta^-fractional_digits
//   q_sat = (Q/2) * Delta
//
// which is exactly large enough that a degree-d polynomial evaluation
// never wraps.
class FixedPointFormat {
 public:
  FixedPointFormat(std::uint32_t radix, std::uint32_t fractional_digits,
                   std::uint32_t integer_digits, std::uint32_t degree);

  std::uint32_t radix() const { return radix_; }
  std::uint32_t fractional_digits() const { return fractional_digits_; }
  std::uint32_t integer_digits() const { return integer_digits_; }
  std::uint32_t degree() const { return degree_; }

  std::uint64_t modulus() const { return modulus_; }
  double precision() const { return precision_; }    // Delta
  double saturation() const { return saturation_; }  // q_sat

  // Common scale every summand of a degree-d evaluation is brought to.
  std::uint32_t target_scale() const { return (degree_ + 1) * fractional_digits_; }

  ModRing ring() const { return {modulus_, radix_}; }

  // Most positive / most negative representable fixed-point values.
  double max_value() const { return max_value_; }
  double min_value() const { return min_value_; }

 private:
  std::uint32_t radix_;
  std::uint32_t fractional_digits_;
  std::uint32_t integer_digits_;
  std::uint32_t degree_;
  std::uint64_t modulus_;
  double scale_factor_;  // beta^fractional_digits
  double precision_;
  double saturation_;
  double max_value_;
  double min_value_;
};

// Saturating mid-tread quantizer: values at or above q_sat - Delta clamp
// to q_sat - Delta, values at or below -q_sat clamp to -q_sat, everything
// else rounds to the nearest multiple of Delta (half away from zero
// upward). Non-finite input throws.
double quantize(double x, const FixedPointFormat& fmt);

// Fixed-point real -> residue at scale fractional_digits. The input must
// be exactly representable (an integer multiple of Delta within the
// saturation bound); anything else throws.
ScaledResidue encode(double x, const FixedPointFormat& fmt);

// Residue -> real. Values v with 2v >= Q are the radix complement of
// negatives.
double decode(const ScaledResidue& r, const ModRing& ring);

}  // namespace mpcctrl
