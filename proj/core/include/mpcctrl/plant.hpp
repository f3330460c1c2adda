#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mpcctrl/polynomial.hpp"

namespace mpcctrl {

// Two-state polynomial benchmark plant with a slow time scale T:
//   x1' = (-x1 + x1*x2 + x2*u) / T
//   x2' = ( x1 + 2*x2 + x1^2 + x1^2*x2 + u) / T
struct PlantModel {
  double time_scale = 1000.0;

  std::array<double, 2> rhs(const std::array<double, 2>& x, double u) const;
};

struct SimConfig {
  double sample_period = 1.0;
  std::uint32_t substeps = 10;
  std::uint32_t horizon = 500;
  std::array<double, 2> initial_state{2.0, -2.0};
  double safety_bound = 6.0;  // |x_i| must stay below this
};

// Integrates the plant over one sample period with u held constant
// (zero-order hold), classical fixed-step fourth-order Runge-Kutta.
std::array<double, 2> plant_step(const PlantModel& plant, std::array<double, 2> x, double u,
                                 double sample_period, std::uint32_t substeps);

struct TrajectoryPoint {
  std::uint32_t step = 0;
  double t = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  std::uint64_t u_quantized = 0;  // raw collector residue
  double u = 0.0;                 // decoded input actually applied
};

struct ClosedLoopOptions {
  Scheme scheme = Scheme::n_party;
  bool secure = true;  // false: plaintext-quantized oracle loop
  bool share_constants = false;
  TransportKind transport = TransportKind::in_memory;
  ZeroSharingMode zero_sharing = ZeroSharingMode::correlated_randomness;
  std::uint64_t seed = 1;
  std::uint64_t session_id = 1;
};

struct ClosedLoopResult {
  std::vector<TrajectoryPoint> trajectory;
  bool diverged = false;
  std::uint32_t diverged_step = 0;
  RunMetrics metrics;
  std::vector<RunMetrics> per_step_metrics;  // per-step deltas
};

// Per step: measure, quantize, evaluate the law (securely or via the
// plaintext oracle), decode, hold the input over the sample period,
// integrate. A state leaving the safety box flags divergence and stops
// with the partial trajectory.
ClosedLoopResult run_closed_loop(const QuantizedLaw& law, const PlantModel& plant,
                                 const SimConfig& sim, const ClosedLoopOptions& options);

// CSV exports: trajectory columns step,t,x1,x2,u_quantized,u_decoded and
// one metrics row per step.
void write_trajectory_csv(std::ostream& out, const ClosedLoopResult& result);
void write_metrics_csv(std::ostream& out, const ClosedLoopResult& result);

}  // namespace mpcctrl
