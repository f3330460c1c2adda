#pragma once

#include <iosfwd>
#include <string>

#include "mpcctrl/polynomial.hpp"

namespace mpcctrl {

// Law definition file: '#' comments, a radix/digits block and one term
// line per summand.
//
//   beta 10
//   x_post 2
//   u_pre 4
//   states 2
//   term  1.6973  1 0
//   term -2.3850  0 3
//
// Each term line is the real coefficient followed by one exponent per
// state variable.
struct LawFile {
  PolynomialLaw law;
  std::uint32_t radix = 10;
  std::uint32_t fractional_digits = 2;
  std::uint32_t integer_digits = 4;
};

LawFile parse_law(std::istream& in);
LawFile parse_law_file(const std::string& path);

}  // namespace mpcctrl
