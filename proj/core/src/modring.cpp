#include "mpcctrl/modring.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mpcctrl {

namespace {

void check_ring(const ModRing& ring) {
  if (ring.modulus < 2 || ring.modulus > kMaxModulus || ring.radix < 2)
    throw std::invalid_argument("modring: invalid ring parameters");
}

void check_residue(const ScaledResidue& r, const ModRing& ring) {
  if (r.value >= ring.modulus)
    throw std::invalid_argument("modring: residue value out of range");
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (result > kMaxModulus / base)
      throw std::invalid_argument("modring: modulus exceeds 2^63");
    result *= base;
  }
  return result;
}

// radix^exp as a double, computed identically at every call site so the
// raw <-> real conversions stay bit-consistent. Falls back to double
// accumulation only past the uint64 range (far outside in-scope scales).
double pow_as_double(std::uint32_t radix, std::uint32_t exp) {
  std::uint64_t acc = 1;
  std::uint32_t i = 0;
  for (; i < exp; ++i) {
    if (acc > UINT64_MAX / radix) break;
    acc *= radix;
  }
  double result = static_cast<double>(acc);
  for (; i < exp; ++i) result *= static_cast<double>(radix);
  return result;
}

}  // namespace

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  // a, b < q <= 2^63, so the sum never wraps uint64.
  const std::uint64_t s = a + b;
  return s >= q ? s - q : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return a >= b ? a - b : q - (b - a);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint32_t exp, std::uint64_t q) {
  std::uint64_t result = 1 % q;
  std::uint64_t acc = base % q;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, acc, q);
    acc = mul_mod(acc, acc, q);
    exp >>= 1;
  }
  return result;
}

ScaledResidue mod_add(const ScaledResidue& a, const ScaledResidue& b, const ModRing& ring) {
  check_ring(ring);
  check_residue(a, ring);
  check_residue(b, ring);
  if (a.scale != b.scale)
    throw std::invalid_argument("mod_add: scale mismatch (" + std::to_string(a.scale) +
                                " vs " + std::to_string(b.scale) + ")");
  return {add_mod(a.value, b.value, ring.modulus), a.scale};
}

ScaledResidue mod_sub(const ScaledResidue& a, const ScaledResidue& b, const ModRing& ring) {
  check_ring(ring);
  check_residue(a, ring);
  check_residue(b, ring);
  if (a.scale != b.scale)
    throw std::invalid_argument("mod_sub: scale mismatch (" + std::to_string(a.scale) +
                                " vs " + std::to_string(b.scale) + ")");
  return {sub_mod(a.value, b.value, ring.modulus), a.scale};
}

ScaledResidue mod_mul(const ScaledResidue& a, const ScaledResidue& b, const ModRing& ring) {
  check_ring(ring);
  check_residue(a, ring);
  check_residue(b, ring);
  return {mul_mod(a.value, b.value, ring.modulus), a.scale + b.scale};
}

ScaledResidue rescale(const ScaledResidue& a, std::uint32_t target_scale, const ModRing& ring) {
  check_ring(ring);
  check_residue(a, ring);
  if (target_scale < a.scale)
    throw std::invalid_argument("rescale: downscaling not supported");
  if (target_scale == a.scale) return a;
  const std::uint64_t factor = pow_mod(ring.radix, target_scale - a.scale, ring.modulus);
  return {mul_mod(a.value, factor, ring.modulus), target_scale};
}

FixedPointFormat::FixedPointFormat(std::uint32_t radix, std::uint32_t fractional_digits,
                                   std::uint32_t integer_digits, std::uint32_t degree)
    : radix_(radix),
      fractional_digits_(fractional_digits),
      integer_digits_(integer_digits),
      degree_(degree) {
  if (radix_ < 2) throw std::invalid_argument("FixedPointFormat: radix must be >= 2");
  if (integer_digits_ < 1)
    throw std::invalid_argument("FixedPointFormat: integer_digits must be >= 1");
  if (degree_ < 1) throw std::invalid_argument("FixedPointFormat: degree must be >= 1");
  const std::uint32_t exponent = integer_digits_ + (degree_ + 1) * fractional_digits_;
  modulus_ = checked_pow(radix_, exponent);
  scale_factor_ = pow_as_double(radix_, fractional_digits_);
  precision_ = 1.0 / scale_factor_;
  saturation_ = (static_cast<double>(modulus_) / 2.0) / scale_factor_;
  // Representable raw units span [-(Q div 2), (Q-1) div 2]; the real values
  // everywhere are raw / beta^fractional_digits so round trips stay
  // bit-exact.
  max_value_ = static_cast<double>((modulus_ - 1) / 2) / scale_factor_;
  min_value_ = -(static_cast<double>(modulus_ / 2) / scale_factor_);
}

double quantize(double x, const FixedPointFormat& fmt) {
  if (!std::isfinite(x)) throw std::invalid_argument("quantize: non-finite input");
  if (x >= fmt.max_value()) return fmt.max_value();
  if (x <= -fmt.saturation()) return fmt.min_value();
  const double sf = pow_as_double(fmt.radix(), fmt.fractional_digits());
  double m = std::floor(x * sf + 0.5);
  const double hi_raw = static_cast<double>((fmt.modulus() - 1) / 2);
  const double lo_raw = -static_cast<double>(fmt.modulus() / 2);
  if (m > hi_raw) m = hi_raw;
  if (m < lo_raw) m = lo_raw;
  return m / sf;
}

ScaledResidue encode(double x, const FixedPointFormat& fmt) {
  if (!std::isfinite(x)) throw std::invalid_argument("encode: non-finite input");
  const double sf = pow_as_double(fmt.radix(), fmt.fractional_digits());
  const double scaled = x * sf;
  if (std::fabs(scaled) > static_cast<double>(fmt.modulus()) / 2.0)
    throw std::invalid_argument("encode: value beyond saturation bound");
  const long long m = std::llround(scaled);
  if (static_cast<double>(m) / sf != x)
    throw std::invalid_argument("encode: value not representable in format");
  const std::uint64_t q = fmt.modulus();
  std::uint64_t value;
  if (m >= 0) {
    value = static_cast<std::uint64_t>(m);
    if (value > q / 2) throw std::invalid_argument("encode: value beyond saturation bound");
  } else {
    const std::uint64_t mag = static_cast<std::uint64_t>(-m);
    if (mag > q / 2) throw std::invalid_argument("encode: value beyond saturation bound");
    value = q - mag;
  }
  return {value, fmt.fractional_digits()};
}

double decode(const ScaledResidue& r, const ModRing& ring) {
  check_ring(ring);
  if (r.value >= ring.modulus)
    throw std::invalid_argument("decode: residue value out of range");
  const double scale_pow = pow_as_double(ring.radix, r.scale);
  if (2 * r.value < ring.modulus)
    return static_cast<double>(r.value) / scale_pow;
  return -(static_cast<double>(ring.modulus - r.value) / scale_pow);
}

}  // namespace mpcctrl
