#include "mpcctrl/driver.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace mpcctrl {

LoadedLaw load_law(const RunConfig& config) {
  if (config.law_path.empty()) throw std::runtime_error("no law file given");
  LawFile file = parse_law_file(config.law_path);
  const std::uint32_t radix = config.radix.value_or(file.radix);
  const std::uint32_t frac = config.fractional_digits.value_or(file.fractional_digits);
  const std::uint32_t integer = config.integer_digits.value_or(file.integer_digits);
  FixedPointFormat format(radix, frac, integer, file.law.degree());
  QuantizedLaw quantized = quantize_law(file.law, format);
  return {std::move(file.law), format, std::move(quantized)};
}

namespace {

void print_metrics(std::ostream& out, const RunMetrics& metrics) {
  out << "role,mod_adds,mod_muls,rng_draws,messages,bytes\n";
  for (const Role role : {Role::distributor, Role::server, Role::collector}) {
    const auto& c = metrics.at(role);
    out << role_name(role) << ',' << c.mod_adds << ',' << c.mod_muls << ',' << c.rng_draws
        << ',' << c.messages << ',' << c.bytes << '\n';
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

EvalReport run_eval(const RunConfig& config) {
  LoadedLaw loaded = load_law(config);
  if (config.eval_state.size() != loaded.law.state_dim)
    throw std::runtime_error("eval: state dimension does not match the law");

  EvaluationPlan plan = plan_evaluation(loaded.quantized, config.scheme, config.share_constants);
  SessionConfig session_config;
  session_config.ring = loaded.format.ring();
  session_config.server_count = plan.pool_size;
  session_config.transport = config.transport;
  session_config.seed = config.seed;
  session_config.zero_sharing = config.zero_sharing;
  Session session(session_config);

  const std::vector<ScaledResidue> state = quantize_state(config.eval_state, loaded.format);
  EvaluateOptions options;
  options.inject_fault = config.inject_fault;
  const ScaledResidue secure = evaluate_secure(loaded.quantized, plan, state, session, options);
  const ScaledResidue plain = evaluate_plaintext(loaded.quantized, state);

  EvalReport report{config.scheme, config.zero_sharing, config.eval_state};
  report.secure_raw = secure.value;
  report.plaintext_raw = plain.value;
  report.secure_u = decode(secure, loaded.format.ring());
  report.plaintext_u = decode(plain, loaded.format.ring());
  report.match = secure == plain;
  report.metrics = session.metrics();
  return report;
}

void EvalReport::print(std::ostream& out) const {
  out << "scheme " << to_string(scheme) << "\n";
  out << "zero_sharing " << to_string(zero_sharing) << "\n";
  out << "state";
  for (double v : state) out << ' ' << format_double(v);
  out << "\n";
  out << "u_secure " << format_double(secure_u) << " (raw " << secure_raw << ")\n";
  out << "u_plaintext " << format_double(plaintext_u) << " (raw " << plaintext_raw << ")\n";
  out << "match " << (match ? "true" : "false") << "\n";
  print_metrics(out, metrics);
}

SimulateReport run_simulate(const RunConfig& config) {
  LoadedLaw loaded = load_law(config);

  ClosedLoopOptions options;
  options.scheme = config.scheme;
  options.secure = true;
  options.share_constants = config.share_constants;
  options.transport = config.transport;
  options.zero_sharing = config.zero_sharing;
  options.seed = config.seed;

  PlantModel plant;
  SimulateReport report{config.scheme, config.zero_sharing,
                        run_closed_loop(loaded.quantized, plant, config.sim, options)};

  if (!config.out_path.empty()) {
    report.trajectory_path = config.out_path;
    report.metrics_path = config.out_path + ".metrics.csv";
    std::ofstream trajectory(report.trajectory_path);
    if (!trajectory) throw std::runtime_error("cannot write " + report.trajectory_path);
    write_trajectory_csv(trajectory, report.result);
    std::ofstream metrics(report.metrics_path);
    if (!metrics) throw std::runtime_error("cannot write " + report.metrics_path);
    write_metrics_csv(metrics, report.result);
  }
  return report;
}

void SimulateReport::print(std::ostream& out) const {
  out << "scheme " << to_string(scheme) << "\n";
  out << "zero_sharing " << to_string(zero_sharing) << "\n";
  out << "steps " << result.trajectory.size() << "\n";
  out << "diverged " << (result.diverged ? "true" : "false");
  if (result.diverged) out << " (step " << result.diverged_step << ")";
  out << "\n";
  if (!result.trajectory.empty()) {
    const auto& last = result.trajectory.back();
    out << "final_state " << format_double(last.x1) << ' ' << format_double(last.x2) << "\n";
  }
  if (!trajectory_path.empty()) {
    out << "trajectory_csv " << trajectory_path << "\n";
    out << "metrics_csv " << metrics_path << "\n";
  }
  print_metrics(out, result.metrics);
}

BenchReport run_bench(const RunConfig& config) {
  LoadedLaw loaded = load_law(config);

  BenchReport report;
  report.states = config.bench_states;
  report.zero_sharing = config.zero_sharing;

  // Same quantized state batch for both schemes.
  SeededRandomness state_rng(mix_seed(config.seed, 0x57A7E5));
  std::vector<std::vector<ScaledResidue>> states;
  const double span = 2.0 * 5.99;
  for (std::uint32_t i = 0; i < config.bench_states; ++i) {
    std::vector<double> x(loaded.law.state_dim);
    for (auto& v : x) {
      const double unit =
          static_cast<double>(state_rng.uniform(1u << 30)) / static_cast<double>(1u << 30);
      v = unit * span - span / 2.0;
    }
    states.push_back(quantize_state(x, loaded.format));
  }

  const std::array<Scheme, 2> schemes{Scheme::three_party, Scheme::n_party};
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    EvaluationPlan plan = plan_evaluation(loaded.quantized, schemes[i], config.share_constants);
    SessionConfig session_config;
    session_config.ring = loaded.format.ring();
    session_config.server_count = plan.pool_size;
    session_config.transport = config.transport;
    session_config.seed = config.seed;
    session_config.zero_sharing = config.zero_sharing;
    Session session(session_config);

    const auto start = std::chrono::steady_clock::now();
    for (const auto& state : states) {
      ScaledResidue secure = evaluate_secure(loaded.quantized, plan, state, session);
      ScaledResidue plain = evaluate_plaintext(loaded.quantized, state);
      if (!(secure == plain)) throw std::logic_error("bench: secure/plaintext mismatch");
      session.advance_step();
    }
    const auto stop = std::chrono::steady_clock::now();

    auto& run = report.runs[i];
    run.scheme = schemes[i];
    run.pool_size = plan.pool_size;
    run.metrics = session.metrics();
    run.wall_seconds = std::chrono::duration<double>(stop - start).count();
    for (const auto& m : session.log()) {
      if (is_server_to_server(m)) ++run.server_to_server_frames;
      if (is_circular_frame(m)) ++run.circular_frames;
    }
  }
  return report;
}

void BenchReport::print(std::ostream& out) const {
  out << "states " << states << "\n";
  out << "zero_sharing " << to_string(zero_sharing) << "\n";
  for (const auto& run : runs) {
    out << "scheme " << to_string(run.scheme) << " pool " << run.pool_size
        << " server_to_server_frames " << run.server_to_server_frames << " circular_frames "
        << run.circular_frames << "\n";
    print_metrics(out, run.metrics);
  }
  // Wall times last and clearly labeled: they are machine-specific.
  for (const auto& run : runs)
    out << "wall_seconds_" << to_string(run.scheme) << ' ' << run.wall_seconds << "\n";
}

}  // namespace mpcctrl
