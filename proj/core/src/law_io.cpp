#include "mpcctrl/law_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mpcctrl {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("law file, line " + std::to_string(line) + ": " + what);
}

}  // namespace

LawFile parse_law(std::istream& in) {
  LawFile out;
  bool have_states = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string key;
    if (!(line >> key)) continue;

    if (key == "beta" || key == "x_post" || key == "u_pre" || key == "states") {
      long long value = -1;
      if (!(line >> value) || value < 0) fail(line_no, "expected a non-negative integer");
      if (key == "beta") out.radix = static_cast<std::uint32_t>(value);
      else if (key == "x_post") out.fractional_digits = static_cast<std::uint32_t>(value);
      else if (key == "u_pre") out.integer_digits = static_cast<std::uint32_t>(value);
      else {
        out.law.state_dim = static_cast<std::uint32_t>(value);
        have_states = true;
      }
    } else if (key == "term") {
      if (!have_states) fail(line_no, "'states' must come before the first term");
      PolynomialTerm term;
      if (!(line >> term.coefficient)) fail(line_no, "expected a coefficient");
      long long e = 0;
      while (line >> e) {
        if (e < 0) fail(line_no, "negative exponent");
        term.exponents.push_back(static_cast<std::uint32_t>(e));
      }
      if (!line.eof()) fail(line_no, "trailing junk after exponents");
      if (term.exponents.size() != out.law.state_dim)
        fail(line_no, "expected one exponent per state variable");
      out.law.terms.push_back(std::move(term));
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  out.law.validate();
  return out;
}

LawFile parse_law_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open law file: " + path);
  return parse_law(in);
}

}  // namespace mpcctrl
