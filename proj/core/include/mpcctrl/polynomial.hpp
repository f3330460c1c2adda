#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mpcctrl/harness.hpp"
#include "mpcctrl/modring.hpp"
#include "mpcctrl/nparty.hpp"

namespace mpcctrl {

struct PolynomialTerm {
  double coefficient = 0.0;
  std::vector<std::uint32_t> exponents;  // one entry per state variable

  std::uint32_t monomial_degree() const;
};

// Control law u = sum over terms of coefficient * prod_i x_i^e_i.
struct PolynomialLaw {
  std::vector<PolynomialTerm> terms;
  std::uint32_t state_dim = 0;

  std::uint32_t degree() const;
  void validate() const;
};

// One law term with its coefficient quantized, encoded and pre-multiplied
// by radix^((degree - k) * fractional_digits) for k state factors, so the
// term product lands on the common scale (degree+1) * fractional_digits
// and the collector can sum terms directly.
struct QuantizedTerm {
  ScaledResidue coefficient;
  std::vector<std::uint32_t> exponents;
  std::uint32_t factor_count = 0;     // 1 + sum of exponents
  double coefficient_value = 0.0;     // quantized real coefficient
  bool saturated = false;
};

struct QuantizedLaw {
  FixedPointFormat format;
  std::vector<QuantizedTerm> terms;
  std::uint32_t state_dim = 0;
  std::uint32_t degree = 0;
  std::uint32_t target_scale = 0;
  std::vector<std::string> warnings;  // saturated coefficients change the law
};

QuantizedLaw quantize_law(const PolynomialLaw& law, const FixedPointFormat& fmt);

enum class Scheme : std::uint8_t { three_party, n_party };
const char* to_string(Scheme scheme);

struct PlannedTerm {
  std::uint16_t summand = 0;  // index into QuantizedLaw::terms
  bool constant = false;
  ProductInstanceSpec instance;  // servers empty for constant terms
};

// Per-summand protocol instances over one shared server pool. The
// three-party scheme always uses servers {1,2,3}; the n-party scheme
// draws k+2 servers per k-state-factor summand from a pool of degree+2,
// reusing the same servers across summands.
struct EvaluationPlan {
  Scheme scheme = Scheme::n_party;
  bool share_constants = false;
  std::uint32_t pool_size = 0;
  std::vector<PlannedTerm> terms;
  std::map<std::uint32_t, SummandAssignment> assignments;  // keyed by factor count

  void validate(const QuantizedLaw& law) const;
};

EvaluationPlan plan_evaluation(const QuantizedLaw& law, Scheme scheme,
                               bool share_constants = false);

// Quantize and encode a measured state vector at scale fractional_digits.
std::vector<ScaledResidue> quantize_state(std::span<const double> state,
                                          const FixedPointFormat& fmt);

struct EvaluateOptions {
  // Corrupt one server's result share of the first product summand; the
  // oracle comparison downstream must flag the mismatch.
  bool inject_fault = false;
};

// Runs every summand instance over the session and sums the equalized
// result shares at the collector. Exactly equals evaluate_plaintext on the
// same inputs.
ScaledResidue evaluate_secure(const QuantizedLaw& law, const EvaluationPlan& plan,
                              std::span<const ScaledResidue> state, Session& session,
                              const EvaluateOptions& options = {});

// Same fixed-point arithmetic without any sharing; the exactness oracle.
ScaledResidue evaluate_plaintext(const QuantizedLaw& law, std::span<const ScaledResidue> state,
                                 OpCounter* ops = nullptr);

}  // namespace mpcctrl
