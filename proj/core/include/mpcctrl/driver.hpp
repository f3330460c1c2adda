#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mpcctrl/law_io.hpp"
#include "mpcctrl/plant.hpp"
#include "mpcctrl/polynomial.hpp"

namespace mpcctrl {

// Batch run configuration shared by the CLI commands.
struct RunConfig {
  Scheme scheme = Scheme::n_party;
  std::string law_path;
  std::optional<std::uint32_t> radix;              // override the law file
  std::optional<std::uint32_t> fractional_digits;  // "
  std::optional<std::uint32_t> integer_digits;     // "
  SimConfig sim;
  TransportKind transport = TransportKind::in_memory;
  ZeroSharingMode zero_sharing = ZeroSharingMode::correlated_randomness;
  bool share_constants = false;
  std::uint64_t seed = 1;
  std::string out_path;
  std::vector<double> eval_state;
  bool inject_fault = false;
  std::uint32_t bench_states = 10;
};

struct LoadedLaw {
  PolynomialLaw law;
  FixedPointFormat format;
  QuantizedLaw quantized;
};

LoadedLaw load_law(const RunConfig& config);

// Single-shot secure evaluation at one state, checked against the
// plaintext oracle.
struct EvalReport {
  Scheme scheme;
  ZeroSharingMode zero_sharing;
  std::vector<double> state;
  std::uint64_t secure_raw = 0;
  std::uint64_t plaintext_raw = 0;
  double secure_u = 0.0;
  double plaintext_u = 0.0;
  bool match = false;
  RunMetrics metrics;

  void print(std::ostream& out) const;
};
EvalReport run_eval(const RunConfig& config);

// Closed-loop simulation; writes the trajectory CSV (and a metrics CSV
// next to it) when an output path is set.
struct SimulateReport {
  Scheme scheme;
  ZeroSharingMode zero_sharing;
  ClosedLoopResult result;
  std::string trajectory_path;
  std::string metrics_path;

  void print(std::ostream& out) const;
};
SimulateReport run_simulate(const RunConfig& config);

// Both schemes over the same batch of states: per-role operation and
// traffic counts plus wall time (machine-specific, never asserted).
struct BenchReport {
  struct SchemeRun {
    Scheme scheme;
    std::uint32_t pool_size = 0;
    RunMetrics metrics;
    std::uint64_t server_to_server_frames = 0;
    std::uint64_t circular_frames = 0;
    double wall_seconds = 0.0;
  };
  std::uint32_t states = 0;
  ZeroSharingMode zero_sharing;
  std::array<SchemeRun, 2> runs;  // three-party, n-party

  void print(std::ostream& out) const;
};
BenchReport run_bench(const RunConfig& config);

}  // namespace mpcctrl
