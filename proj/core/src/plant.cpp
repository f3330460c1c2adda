#include "mpcctrl/plant.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace mpcctrl {

std::array<double, 2> PlantModel::rhs(const std::array<double, 2>& x, double u) const {
  const double x1 = x[0];
  const double x2 = x[1];
  return {(-x1 + x1 * x2 + x2 * u) / time_scale,
          (x1 + 2.0 * x2 + x1 * x1 + x1 * x1 * x2 + u) / time_scale};
}

std::array<double, 2> plant_step(const PlantModel& plant, std::array<double, 2> x, double u,
                                 double sample_period, std::uint32_t substeps) {
  if (!(sample_period > 0.0) || substeps < 1)
    throw std::invalid_argument("plant_step: bad integrator configuration");
  const double h = sample_period / substeps;
  for (std::uint32_t s = 0; s < substeps; ++s) {
    const auto k1 = plant.rhs(x, u);
    const auto k2 = plant.rhs({x[0] + 0.5 * h * k1[0], x[1] + 0.5 * h * k1[1]}, u);
    const auto k3 = plant.rhs({x[0] + 0.5 * h * k2[0], x[1] + 0.5 * h * k2[1]}, u);
    const auto k4 = plant.rhs({x[0] + h * k3[0], x[1] + h * k3[1]}, u);
    x[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    x[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  }
  return x;
}

ClosedLoopResult run_closed_loop(const QuantizedLaw& law, const PlantModel& plant,
                                 const SimConfig& sim, const ClosedLoopOptions& options) {
  if (!(sim.safety_bound > 0.0)) throw std::invalid_argument("run_closed_loop: bad safety bound");
  ClosedLoopResult result;
  result.trajectory.reserve(sim.horizon);

  std::unique_ptr<Session> session;
  std::unique_ptr<EvaluationPlan> plan;
  if (options.secure) {
    plan = std::make_unique<EvaluationPlan>(
        plan_evaluation(law, options.scheme, options.share_constants));
    SessionConfig config;
    config.session_id = options.session_id;
    config.ring = law.format.ring();
    config.server_count = plan->pool_size;
    config.transport = options.transport;
    config.seed = options.seed;
    config.zero_sharing = options.zero_sharing;
    session = std::make_unique<Session>(config);
  }

  const ModRing ring = law.format.ring();
  std::array<double, 2> x = sim.initial_state;
  RunMetrics previous;

  for (std::uint32_t step = 0; step < sim.horizon; ++step) {
    if (std::fabs(x[0]) >= sim.safety_bound || std::fabs(x[1]) >= sim.safety_bound) {
      result.diverged = true;
      result.diverged_step = step;
      break;
    }

    const std::vector<ScaledResidue> encoded = quantize_state(std::span(x.data(), 2), law.format);
    ScaledResidue u_res;
    if (options.secure) {
      u_res = evaluate_secure(law, *plan, encoded, *session);
      RunMetrics snapshot = session->metrics();
      RunMetrics delta = snapshot;
      for (std::size_t r = 0; r < delta.by_role.size(); ++r) {
        delta.by_role[r].mod_adds -= previous.by_role[r].mod_adds;
        delta.by_role[r].mod_muls -= previous.by_role[r].mod_muls;
        delta.by_role[r].rng_draws -= previous.by_role[r].rng_draws;
        delta.by_role[r].messages -= previous.by_role[r].messages;
        delta.by_role[r].bytes -= previous.by_role[r].bytes;
      }
      result.per_step_metrics.push_back(delta);
      previous = snapshot;
      session->advance_step();
    } else {
      u_res = evaluate_plaintext(law, encoded);
      result.per_step_metrics.emplace_back();
    }

    const double u = decode(u_res, ring);
    result.trajectory.push_back({step, step * sim.sample_period, x[0], x[1], u_res.value, u});
    x = plant_step(plant, x, u, sim.sample_period, sim.substeps);
  }

  if (options.secure) result.metrics = session->metrics();
  return result;
}

void write_trajectory_csv(std::ostream& out, const ClosedLoopResult& result) {
  out << "step,t,x1,x2,u_quantized,u_decoded\n";
  char line[256];
  for (const auto& p : result.trajectory) {
    std::snprintf(line, sizeof line, "%u,%.6f,%.12g,%.12g,%llu,%.12g\n", p.step, p.t, p.x1, p.x2,
                  static_cast<unsigned long long>(p.u_quantized), p.u);
    out << line;
  }
  if (result.diverged) out << "# diverged at step " << result.diverged_step << "\n";
}

void write_metrics_csv(std::ostream& out, const ClosedLoopResult& result) {
  out << "step,role,mod_adds,mod_muls,rng_draws,messages,bytes\n";
  for (std::size_t step = 0; step < result.per_step_metrics.size(); ++step) {
    const auto& metrics = result.per_step_metrics[step];
    for (const Role role : {Role::distributor, Role::server, Role::collector}) {
      const auto& c = metrics.at(role);
      out << step << ',' << role_name(role) << ',' << c.mod_adds << ',' << c.mod_muls << ','
          << c.rng_draws << ',' << c.messages << ',' << c.bytes << '\n';
    }
  }
}

}  // namespace mpcctrl
