#include "mpcctrl/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mpcctrl/threeparty.hpp"

namespace mpcctrl {

std::uint32_t PolynomialTerm::monomial_degree() const {
  std::uint32_t d = 0;
  for (auto e : exponents) d += e;
  return d;
}

std::uint32_t PolynomialLaw::degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms) d = std::max(d, t.monomial_degree());
  return d;
}

void PolynomialLaw::validate() const {
  if (terms.empty()) throw std::invalid_argument("PolynomialLaw: no terms");
  if (state_dim == 0) throw std::invalid_argument("PolynomialLaw: zero state dimension");
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& t : terms) {
    if (t.exponents.size() != state_dim)
      throw std::invalid_argument("PolynomialLaw: exponent vector width mismatch");
    if (!seen.insert(t.exponents).second)
      throw std::invalid_argument("PolynomialLaw: duplicate exponent vector");
  }
  if (degree() < 1) throw std::invalid_argument("PolynomialLaw: degree must be >= 1");
}

QuantizedLaw quantize_law(const PolynomialLaw& law, const FixedPointFormat& fmt) {
  law.validate();
  const std::uint32_t d = law.degree();
  if (d > fmt.degree())
    throw std::invalid_argument("quantize_law: law degree exceeds format degree");

  QuantizedLaw out{fmt};
  out.state_dim = law.state_dim;
  out.degree = d;
  out.target_scale = (d + 1) * fmt.fractional_digits();

  const ModRing ring = fmt.ring();
  for (const auto& term : law.terms) {
    QuantizedTerm qt;
    qt.exponents = term.exponents;
    const std::uint32_t k = term.monomial_degree();
    qt.factor_count = 1 + k;
    qt.coefficient_value = quantize(term.coefficient, fmt);
    qt.saturated = qt.coefficient_value != term.coefficient &&
                   (term.coefficient >= fmt.max_value() || term.coefficient <= -fmt.saturation());
    if (qt.saturated) {
      std::ostringstream msg;
      msg << "coefficient " << term.coefficient << " saturates to " << qt.coefficient_value
          << "; the quantized law differs from the requested one";
      out.warnings.push_back(msg.str());
    }
    // Pre-multiply so coefficient scale + k state factors = target scale.
    const std::uint32_t coeff_scale = (d - k + 1) * fmt.fractional_digits();
    qt.coefficient = rescale(encode(qt.coefficient_value, fmt), coeff_scale, ring);
    out.terms.push_back(std::move(qt));
  }
  return out;
}

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::three_party: return "three-party";
    case Scheme::n_party: return "n-party";
  }
  return "?";
}

EvaluationPlan plan_evaluation(const QuantizedLaw& law, Scheme scheme, bool share_constants) {
  EvaluationPlan plan;
  plan.scheme = scheme;
  plan.share_constants = share_constants;
  plan.pool_size = scheme == Scheme::three_party ? 3 : law.degree + 2;

  for (std::size_t i = 0; i < law.terms.size(); ++i) {
    const auto& term = law.terms[i];
    PlannedTerm planned;
    planned.summand = static_cast<std::uint16_t>(i);
    planned.instance.summand = planned.summand;
    if (term.factor_count < 2) {
      planned.constant = true;
    } else {
      const std::uint32_t servers =
          scheme == Scheme::three_party ? 3 : term.factor_count + 1;
      for (std::uint32_t s = 1; s <= servers; ++s)
        planned.instance.servers.push_back(static_cast<std::uint8_t>(s));
      if (scheme == Scheme::n_party && !plan.assignments.count(term.factor_count))
        plan.assignments.emplace(term.factor_count, SummandAssignment::build(term.factor_count));
    }
    plan.terms.push_back(std::move(planned));
  }
  plan.validate(law);
  return plan;
}

void EvaluationPlan::validate(const QuantizedLaw& law) const {
  if (terms.size() != law.terms.size())
    throw std::logic_error("EvaluationPlan: term count mismatch");
  for (const auto& planned : terms) {
    const auto& term = law.terms[planned.summand];
    if (term.factor_count > law.degree + 1)
      throw std::logic_error("EvaluationPlan: factor count exceeds degree+1");
    if (planned.constant) continue;
    if (planned.instance.servers.empty())
      throw std::logic_error("EvaluationPlan: product term without servers");
    std::set<std::uint8_t> distinct(planned.instance.servers.begin(),
                                    planned.instance.servers.end());
    if (distinct.size() != planned.instance.servers.size())
      throw std::logic_error("EvaluationPlan: duplicate server in instance");
    for (auto s : planned.instance.servers)
      if (s < 1 || s > pool_size) throw std::logic_error("EvaluationPlan: server outside pool");
    if (scheme == Scheme::three_party && planned.instance.servers.size() != 3)
      throw std::logic_error("EvaluationPlan: three-party instance needs 3 servers");
    if (scheme == Scheme::n_party &&
        planned.instance.servers.size() != term.factor_count + 1)
      throw std::logic_error("EvaluationPlan: n-party instance needs factor_count+1 servers");
  }
}

std::vector<ScaledResidue> quantize_state(std::span<const double> state,
                                          const FixedPointFormat& fmt) {
  std::vector<ScaledResidue> out;
  out.reserve(state.size());
  for (double x : state) out.push_back(encode(quantize(x, fmt), fmt));
  return out;
}

namespace {

std::vector<ScaledResidue> term_factors(const QuantizedTerm& term,
                                        std::span<const ScaledResidue> state) {
  std::vector<ScaledResidue> factors;
  factors.reserve(term.factor_count);
  factors.push_back(term.coefficient);
  for (std::size_t i = 0; i < term.exponents.size(); ++i)
    for (std::uint32_t rep = 0; rep < term.exponents[i]; ++rep) factors.push_back(state[i]);
  return factors;
}

}  // namespace

ScaledResidue evaluate_secure(const QuantizedLaw& law, const EvaluationPlan& plan,
                              std::span<const ScaledResidue> state, Session& session,
                              const EvaluateOptions& options) {
  if (state.size() != law.state_dim)
    throw std::invalid_argument("evaluate_secure: state dimension mismatch");
  for (const auto& s : state)
    if (s.scale != law.format.fractional_digits())
      throw std::invalid_argument("evaluate_secure: state must be at the base scale");
  const ModRing ring = law.format.ring();

  std::vector<ScaledResidue> results;
  results.reserve(plan.terms.size());
  bool fault_pending = options.inject_fault;

  for (const auto& planned : plan.terms) {
    const auto& term = law.terms[planned.summand];
    if (planned.constant) {
      if (!plan.share_constants) {
        // The constant travels straight to the collector.
        Message m;
        m.session = session.config().session_id;
        m.step = session.step();
        m.summand = planned.summand;
        m.round = 0;
        m.sender = PartyId::distributor();
        m.receiver = PartyId::collector();
        m.payload.push_back(term.coefficient);
        session.send(m);
        results.push_back(
            session.receive(PartyId::collector(), PartyId::distributor()).payload.at(0));
      } else {
        // Split the constant additively over the pool; every server
        // forwards its piece, so no single party sees the coefficient.
        OpCounter ops;
        Sharing pieces = share(term.coefficient, plan.pool_size, ring,
                               session.rng(PartyId::distributor()), &ops);
        session.count_ops(Role::distributor, ops);
        for (std::uint32_t j = 0; j < plan.pool_size; ++j) {
          Message m;
          m.session = session.config().session_id;
          m.step = session.step();
          m.summand = planned.summand;
          m.round = 0;
          m.sender = PartyId::distributor();
          m.receiver = PartyId::server(static_cast<std::uint8_t>(j + 1));
          m.payload.push_back(pieces.components[j]);
          session.send(m);
        }
        std::vector<ScaledResidue> received;
        for (std::uint32_t j = 0; j < plan.pool_size; ++j) {
          const PartyId self = PartyId::server(static_cast<std::uint8_t>(j + 1));
          Message piece = session.receive(self, PartyId::distributor());
          piece.round = 1;
          piece.sender = self;
          piece.receiver = PartyId::collector();
          session.send(piece);
          received.push_back(
              session.receive(PartyId::collector(), self).payload.at(0));
        }
        OpCounter collect_ops;
        results.push_back(reconstruct(std::span<const ScaledResidue>(received), ring,
                                      &collect_ops));
        session.count_ops(Role::collector, collect_ops);
      }
      continue;
    }

    const std::vector<ScaledResidue> factors = term_factors(term, state);
    FaultInjection fault{true, 0};
    const FaultInjection* fault_ptr = nullptr;
    if (fault_pending) {
      fault_ptr = &fault;
      fault_pending = false;
    }
    ScaledResidue z =
        plan.scheme == Scheme::three_party
            ? run_three_party_product(session, planned.instance, factors, fault_ptr)
            : run_n_party_product(session, planned.instance,
                                  plan.assignments.at(term.factor_count), factors, fault_ptr);
    if (z.scale != law.target_scale)
      throw std::logic_error("evaluate_secure: summand scale drifted off target");
    results.push_back(z);
  }

  OpCounter sum_ops;
  ScaledResidue u = reconstruct(std::span<const ScaledResidue>(results), ring, &sum_ops);
  session.count_ops(Role::collector, sum_ops);
  return u;
}

ScaledResidue evaluate_plaintext(const QuantizedLaw& law, std::span<const ScaledResidue> state,
                                 OpCounter* ops) {
  if (state.size() != law.state_dim)
    throw std::invalid_argument("evaluate_plaintext: state dimension mismatch");
  const ModRing ring = law.format.ring();
  ScaledResidue acc{0, law.target_scale};
  for (const auto& term : law.terms) {
    ScaledResidue prod = term.coefficient;
    for (std::size_t i = 0; i < term.exponents.size(); ++i)
      for (std::uint32_t rep = 0; rep < term.exponents[i]; ++rep) {
        prod = mod_mul(prod, state[i], ring);
        if (ops) ops->muls += 1;
      }
    acc = mod_add(acc, prod, ring);
    if (ops) ops->adds += 1;
  }
  return acc;
}

}  // namespace mpcctrl
