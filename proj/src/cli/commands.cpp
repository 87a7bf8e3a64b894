#include "nagf/cli/commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "nagf/errors.hpp"
#include "nagf/noise.hpp"
#include "nagf/protocols.hpp"
#include "nagf/random.hpp"
#include "nagf/tomography.hpp"

namespace nagf::cli {

const char* version() { return NAGF_VERSION; }

namespace {

double omega0_of(const RunConfig& c) { return 2 * pi * c.omega0_khz * 1e3; }
double period_of(const RunConfig& c) { return c.period_us * 1e-6; }

LoopOptions loop_options(const RunConfig& c) {
  LoopOptions o;
  o.omega0 = omega0_of(c);
  o.period = period_of(c);
  o.varphi0 = c.varphi0 * pi;
  o.ramp_fraction = c.ramp;
  o.steps_per_loop = c.steps;
  return o;
}

TriangleLoop triangle_of(const RunConfig& c) {
  TriangleLoop l;
  l.theta0 = c.theta0 * pi;
  l.delta_varphi = c.delta_varphi * pi;
  l.phi_mix = c.phi * pi;
  l.varphi0 = c.varphi0 * pi;
  l.omega0 = omega0_of(c);
  l.period = period_of(c);
  l.ramp_fraction = c.ramp;
  return l;
}

void add_operator_summary(Table& t, const std::string& name, const Unitary2& u) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      t.summary.emplace_back(fmt::format("{}_{}{}_re", name, r + 1, c + 1), u(r, c).real());
      t.summary.emplace_back(fmt::format("{}_{}{}_im", name, r + 1, c + 1), u(r, c).imag());
    }
}

Table cmd_eigen(const RunConfig& c) {
  Table t;
  t.columns = {"theta", "phi", "varphi", "lambda_lower", "lambda_upper", "residual"};
  const double w0 = omega0_of(c);
  for (double th : parse_grid(c.theta_grid))
    for (double ph : parse_grid(c.phi_grid))
      for (double vp : parse_grid(c.varphi_grid)) {
        const ControlPoint p{th * pi, ph * pi, vp * pi, w0};
        const EigenSystem es = eigensystem(p);
        const Complex4 h = build_hamiltonian(p);
        double res = 0.0;
        for (const auto& d : es.dark) res = std::max(res, (h * d - es.lower_eigenvalue * d).norm() / w0);
        for (const auto& b : es.bright) res = std::max(res, (h * b - es.upper_eigenvalue * b).norm() / w0);
        t.add_row({th, ph, vp, es.lower_eigenvalue / w0, es.upper_eigenvalue / w0, res});
      }
  t.summary.emplace_back("energy_unit", std::string("omega0"));
  return t;
}

// Patch average of F_θϕ over [θ0, θ0+Δθ] × [ϕ0, ϕ0+Δϕ] by the midpoint rule.
template <class F>
Complex2 patch_average(double th0, double v0, double dth, double dv, double phi, int m, F field) {
  Complex2 acc = Complex2::Zero();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const ControlPoint p{th0 + dth * (i + 0.5) / m, phi, v0 + dv * (j + 0.5) / m, 1.0};
      acc += field(p);
    }
  return acc / static_cast<double>(m * m);
}

Table cmd_field(const RunConfig& c) {
  Table t;
  t.columns = {"theta0", "varphi0", "f11_abs", "f12_abs", "f11_abs_spherical", "f12_abs_spherical", "source"};
  const double dth = c.delta_theta * pi, dv = c.delta_varphi * pi, v0 = c.varphi0 * pi, phi = c.phi * pi;
  const LoopOptions o = loop_options(c);
  for (double th : parse_grid(c.theta0_grid)) {
    const double th0 = th * pi;
    if (th0 < 0.0 || th0 + dth > pi) throw InvalidInput("field: patch leaves [0, π]");
    const double s = std::sin(th0 + dth / 2);
    if (std::abs(s) <= 1e-6) throw PoleError("field: patch centre too close to a pole");
    auto emit = [&](const Complex2& f, const char* source) {
      t.add_row({th, c.varphi0, std::abs(f(0, 0)), std::abs(f(0, 1)), std::abs(f(0, 0)) / s,
                 std::abs(f(0, 1)) / s, std::string(source)});
    };
    emit(patch_average(th0, v0, dth, dv, phi, 16,
                       [](const ControlPoint& p) { return curvature_analytic(p).f_theta_varphi; }),
         "analytic");
    emit(patch_average(th0, v0, dth, dv, phi, 6,
                       [](const ControlPoint& p) { return curvature_numeric(p, 1e-4).f_theta_varphi; }),
         "numeric");
    emit(extract_field(th0, v0, dth, dv, c.loops, phi, o).fbar, "extracted");
  }
  return t;
}

Table cmd_evolve(const RunConfig& c) {
  if (c.samples < 1) throw InvalidInput("evolve: samples must be positive");
  if (c.initial != 2 && c.initial != 4) throw InvalidInput("evolve: initial must be 2 or 4");
  const TriangleLoop loop = triangle_of(c);
  const ParameterSchedule s = triangle_schedule(loop);
  std::vector<double> times;
  for (int k = 0; k <= c.samples; ++k) times.push_back(s.duration() * k / c.samples);
  const Propagation p = propagate(s, c.steps, times);
  const State4 psi0 = basis_state(c.initial);

  Table t;
  t.columns = {"t_us", "theta", "varphi", "P1", "P2", "P3", "P4", "bright_leakage"};
  for (std::size_t k = 0; k < times.size(); ++k) {
    const State4 psi = p.checkpoint_propagators[k] * psi0;
    const ControlPoint cp = s.point_at(times[k]);
    const auto dark = dark_states(cp.theta, cp.phi_mix, cp.varphi);
    double in_dark = 0.0;
    for (const auto& d : dark) in_dark += std::norm(d.dot(psi));
    t.add_row({times[k] * 1e6, cp.theta / pi, cp.varphi / pi, std::norm(psi(0)), std::norm(psi(1)),
               std::norm(psi(2)), std::norm(psi(3)), std::clamp(1.0 - in_dark, 0.0, 1.0)});
  }

  const HolonomyResult h = holonomy_from_propagator(p.propagator, p.dynamical_phase, s.point_at(0.0),
                                                    s.point_at(s.duration()));
  const Unitary2 w = to_pseudospin(wilson_line(path_from_schedule(s)), s.point_at(0.0));
  const Unitary2 g = to_pseudospin(orange_slice_gate(loop.theta0, loop.delta_varphi, loop.phi_mix),
                                   {0.0, loop.phi_mix, loop.varphi0, loop.omega0});
  t.summary.emplace_back("steps", static_cast<long long>(p.steps));
  t.summary.emplace_back("norm_drift", p.norm_drift);
  t.summary.emplace_back("holonomy_bright_leakage", h.bright_leakage);
  t.summary.emplace_back("fidelity_ode_wilson", gate_fidelity(h.pseudospin, w));
  t.summary.emplace_back("fidelity_ode_orange_slice", gate_fidelity(h.pseudospin, g));
  t.summary.emplace_back("fidelity_wilson_orange_slice", gate_fidelity(w, g));
  add_operator_summary(t, "holonomy", h.pseudospin);
  return t;
}

Table cmd_multiloop(const RunConfig& c) {
  const MultiLoopReport r =
      multi_loop_run(c.theta0 * pi, c.delta_varphi * pi, c.phi * pi, c.loops, loop_options(c));
  Table t;
  t.columns = {"loop_index", "P1", "P2", "P3", "P4"};
  for (std::size_t k = 0; k < r.populations.size(); ++k) {
    const auto& p = r.populations[k];
    t.add_row({static_cast<long long>(k + 1), p[0], p[1], p[2], p[3]});
  }
  t.summary.emplace_back("bright_leakage", r.bright_leakage);
  add_operator_summary(t, "single_loop", r.single_loop);
  return t;
}

Table cmd_minarea(const RunConfig& c) {
  const auto res = minimal_area_scan(c.theta0 * pi, parse_int_list(c.loop_counts), c.threshold,
                                     c.phi * pi, loop_options(c), c.max_delta_varphi * pi);
  Table t;
  t.columns = {"loops", "delta_varphi", "area", "found"};
  for (const auto& m : res)
    t.add_row({static_cast<long long>(m.loops), m.delta_varphi / pi, m.area, static_cast<long long>(m.found)});
  if (res.size() >= 2 && res.back().found && res.front().found && res.back().area > 0.0)
    t.summary.emplace_back("area_ratio_first_last", res.front().area / res.back().area);
  return t;
}

Table cmd_noncomm(const RunConfig& c) {
  NoncommOptions o;
  o.omega0 = omega0_of(c);
  o.period = period_of(c);
  o.steps = c.steps;
  const auto rows =
      noncommutativity_experiment(c.theta1 * pi, c.theta2 * pi, c.gamma * pi, parse_grid(c.gamma_prime_grid), o);
  Table t;
  t.columns = {"gamma_prime", "P12", "P21", "Pd"};
  double leak = 0.0;
  for (const auto& r : rows) {
    t.add_row({r.gamma_prime, r.p12, r.p21, r.pd});
    leak = std::max(leak, r.bright_leakage);
  }
  t.summary.emplace_back("bright_leakage", leak);
  if (!rows.empty()) {
    t.summary.emplace_back("Pd_operator_last", rows.back().pd_operator);
    t.summary.emplace_back("commutator_norm_last", rows.back().commutator_norm);
  }
  return t;
}

Table cmd_extract(const RunConfig& c) {
  Table t;
  t.columns = {"theta0", "varphi0", "f11_re", "f11_im", "f12_re", "f12_im"};
  const LoopOptions o = loop_options(c);
  for (double th : parse_grid(c.theta0_grid)) {
    const FieldEstimate f =
        extract_field(th * pi, c.varphi0 * pi, c.delta_theta * pi, c.delta_varphi * pi, c.loops, c.phi * pi, o);
    t.add_row({th, c.varphi0, f.fbar(0, 0).real(), f.fbar(0, 0).imag(), f.fbar(0, 1).real(), f.fbar(0, 1).imag()});
  }
  return t;
}

Table cmd_tomo(const RunConfig& c) {
  if (c.shots < 0) throw InvalidInput("tomo: shots must be nonnegative");
  const MultiLoopReport r =
      multi_loop_run(c.theta0 * pi, c.delta_varphi * pi, c.phi * pi, c.loops, loop_options(c));
  std::vector<InputState> inputs{InputState::two, InputState::four};
  if (c.superposition) inputs.push_back(InputState::plus);

  Table t;
  t.columns = {"basis", "expectation", "stderr", "shots"};
  std::vector<TomographyRecord> records;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const State4 psi = embed_pseudospin(r.u_n.matrix() * input_vector(inputs[i]));
    const TomographyRecord rec = c.shots == 0 ? exact_record(r.u_n, inputs[i])
                                              : measure_record(psi, inputs[i], c.shots, derive_seed(c.seed, i));
    const char* names[] = {"x", "y", "z"};
    for (int b = 0; b < 3; ++b)
      t.add_row({fmt::format("in{}:{}", to_string(inputs[i]), names[b]), rec.expectation(b),
                 rec.standard_error(b), static_cast<long long>(c.shots)});
    records.push_back(rec);
  }
  const Reconstruction rec = reconstruct_unitary(records);
  const Unitary2 root = nth_root_su2(rec.unitary, c.loops).root;
  t.summary.emplace_back("fidelity_reconstructed_vs_simulated", gate_fidelity(rec.unitary, r.u_n));
  t.summary.emplace_back("fidelity_root_vs_single_loop", gate_fidelity(root, r.single_loop));
  add_operator_summary(t, "reconstructed", rec.unitary);
  return t;
}

Table cmd_noise(const RunConfig& c) {
  RobustnessSetup setup;
  setup.loop = triangle_of(c);
  setup.loops = c.loops;
  setup.steps = c.steps > 0 ? c.steps * c.loops : 0;
  Table t;
  t.columns = {"r", "r_prime", "eta", "fidelity_mean", "fidelity_std"};
  auto emit = [&](const ScanPoint& p) {
    t.add_row({p.spec.r, p.spec.r_prime, p.spec.eta, p.stats.mean, p.stats.std});
  };
  for (const auto& p : systematic_scan(setup, parse_grid(c.r_grid), {1.0})) emit(p);
  for (const auto& p : systematic_scan(setup, {1.0}, parse_grid(c.r_prime_grid))) emit(p);
  for (const auto& p : random_scan(setup, parse_grid(c.eta_grid), c.trials, c.seed)) emit(p);
  t.summary.emplace_back("adiabatic_error", 1.0 - noisy_fidelity(setup, NoiseSpec{}).mean);
  return t;
}

Table cmd_errorbars(const RunConfig& c) {
  const MultiLoopReport r =
      multi_loop_run(c.theta0 * pi, c.delta_varphi * pi, c.phi * pi, c.loops, loop_options(c));
  const double p = r.populations.back()[3];
  const int shots = c.shots_per_average > 0 ? c.shots_per_average : calibrate_shots(p, c.target_std);
  Table t;
  t.columns = {"n_averages", "std_of_mean", "expected_std", "shots", "probability"};
  for (const auto& e : error_bar_convergence(p, shots, parse_int_list(c.averages), c.seed, c.repetitions))
    t.add_row({static_cast<long long>(e.n_averages), e.std_of_mean,
               std::sqrt(p * (1 - p) / (static_cast<double>(shots) * e.n_averages)),
               static_cast<long long>(shots), p});
  return t;
}

using Command = Table (*)(const RunConfig&);

const std::map<std::string, std::pair<Command, const char*>>& commands() {
  static const std::map<std::string, std::pair<Command, const char*>> m{
      {"eigen", {cmd_eigen, "Eigenvalues and eigen-equation residuals over a parameter grid"}},
      {"field", {cmd_field, "Curvature magnitudes: analytic, finite-difference and loop-extracted"}},
      {"evolve", {cmd_evolve, "Population trace and holonomy of one triangle loop"}},
      {"multiloop", {cmd_multiloop, "Bare-state populations after each of N repeated loops"}},
      {"minarea", {cmd_minarea, "Smallest detectable loop width for several loop counts"}},
      {"noncomm", {cmd_noncomm, "Order dependence of the two composite loops"}},
      {"extract", {cmd_extract, "Field estimates from pairs of nested triangle loops"}},
      {"tomo", {cmd_tomo, "Simulated pseudospin tomography of the N-loop operator"}},
      {"noise", {cmd_noise, "Final-state fidelity under control-amplitude errors"}},
      {"errorbars", {cmd_errorbars, "Spread of averaged population measurements"}},
  };
  return m;
}

std::string canon(double v) { return fmt::format("{}", v); }
std::string canon(int v) { return fmt::format("{}", v); }
std::string canon(std::uint64_t v) { return fmt::format("{}", v); }
std::string canon(bool v) { return v ? "true" : "false"; }
std::string canon(const std::string& v) { return v; }

struct Registry {
  std::vector<std::pair<std::string, std::function<std::string()>>> items;

  template <class T>
  void add(CLI::App* sub, const std::string& name, T& field, const std::string& help) {
    if constexpr (std::is_same_v<T, bool>)
      sub->add_flag("--" + name, field, help);
    else
      sub->add_option("--" + name, field, help);
    items.emplace_back(name, [&field] { return canon(field); });
  }
};

void register_options(CLI::App* sub, const std::string& name, RunConfig& c, Registry& reg) {
  reg.add(sub, "omega0-khz", c.omega0_khz, "Ω0/2π in kHz");
  reg.add(sub, "period-us", c.period_us, "Loop duration T in μs (0: command default)");
  reg.add(sub, "steps", c.steps, "Integration steps per loop (0: automatic)");
  reg.add(sub, "seed", c.seed, "Master random seed");
  reg.add(sub, "format", c.format, "Output format: csv or json");
  sub->add_option("--out", c.out, "Output file (default: stdout)");
  sub->add_option("--config", c.config_file, "key=value file or earlier output to take settings from");

  const bool loop = name != "eigen" && name != "noncomm";
  if (loop) {
    reg.add(sub, "theta0", c.theta0, "Loop apex θ0 (units of π)");
    reg.add(sub, "delta-varphi", c.delta_varphi, "Loop width Δϕ (units of π)");
    reg.add(sub, "phi", c.phi, "Mixing angle φ (units of π)");
    reg.add(sub, "varphi0", c.varphi0, "Starting phase ϕ0 (units of π)");
    reg.add(sub, "ramp", c.ramp, "Width of the ϕ ramp as a fraction of T (0: step)");
  }
  if (loop && name != "evolve") reg.add(sub, "loops", c.loops, "Number of repeated loops N");

  if (name == "eigen") {
    reg.add(sub, "theta-grid", c.theta_grid, "θ grid, start:stop:count or list (units of π)");
    reg.add(sub, "phi-grid", c.phi_grid, "φ grid (units of π)");
    reg.add(sub, "varphi-grid", c.varphi_grid, "ϕ grid (units of π)");
  } else if (name == "field" || name == "extract") {
    reg.add(sub, "theta0-grid", c.theta0_grid, "Patch lower edges θ0 (units of π)");
    reg.add(sub, "delta-theta", c.delta_theta, "Patch height Δθ (units of π)");
  } else if (name == "evolve") {
    reg.add(sub, "initial", c.initial, "Initial bare level, 2 or 4");
    reg.add(sub, "samples", c.samples, "Number of output time samples");
  } else if (name == "minarea") {
    reg.add(sub, "loop-counts", c.loop_counts, "Loop counts N to scan");
    reg.add(sub, "threshold", c.threshold, "Population deviation threshold");
    reg.add(sub, "max-delta-varphi", c.max_delta_varphi, "Largest Δϕ scanned (units of π)");
  } else if (name == "noncomm") {
    reg.add(sub, "theta1", c.theta1, "Amplitude of loop C1 (units of π)");
    reg.add(sub, "theta2", c.theta2, "Amplitude of loop C2 (units of π)");
    reg.add(sub, "gamma", c.gamma, "Mixing amplitude γ (units of π)");
    reg.add(sub, "gamma-prime-grid", c.gamma_prime_grid, "γ′ = γ_used/γ values in [0, 1]");
  } else if (name == "tomo") {
    reg.add(sub, "shots", c.shots, "Shots per basis (0: exact expectations)");
    reg.add(sub, "superposition", c.superposition, "Add a (|2>+|4>)/√2 input record");
  } else if (name == "noise") {
    reg.add(sub, "r-grid", c.r_grid, "Rabi scale factors r");
    reg.add(sub, "r-prime-grid", c.r_prime_grid, "Detuning scale factors r′");
    reg.add(sub, "eta-grid", c.eta_grid, "Random-noise amplitudes η");
    reg.add(sub, "trials", c.trials, "Noise realizations per η");
  } else if (name == "errorbars") {
    reg.add(sub, "shots-per-average", c.shots_per_average, "Shots per measurement (0: calibrate)");
    reg.add(sub, "target-std", c.target_std, "Target spread of the 20-measurement mean");
    reg.add(sub, "averages", c.averages, "Numbers of averaged measurements");
    reg.add(sub, "repetitions", c.repetitions, "Simulated experiments per point");
  }
}

// Finds the value given to --config, if any.
std::string find_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

}  // namespace

Table run_command(const RunConfig& cfg) {
  const auto& m = commands();
  const auto it = m.find(cfg.command);
  if (it == m.end()) throw InvalidInput("unknown command '" + cfg.command + "'");
  if (cfg.format != "csv" && cfg.format != "json") throw InvalidInput("format must be csv or json");
  if (!(cfg.omega0_khz > 0.0)) throw InvalidInput("omega0-khz must be positive");
  if (!(cfg.period_us > 0.0)) throw InvalidInput("period-us must be positive");
  if (cfg.steps < 0) throw InvalidInput("steps must be nonnegative");
  return it->second.first(cfg);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Non-Abelian gauge field simulations in a double-Lambda four-level atom", "nagf"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  std::map<std::string, Registry> registries;
  for (const auto& [name, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    register_options(sub, name, cfg, registries[name]);
  }

  std::vector<std::string> argv_store = args;
  const std::string config_path = find_config(args);
  if (!config_path.empty() && !args.empty()) {
    std::vector<std::pair<std::string, std::string>> kv;
    try {
      kv = load_config_file(config_path);
    } catch (const std::ios_base::failure& e) {
      err << "error: " << e.what() << "\n";
      return exit_io;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
    // File settings go first so command-line flags take precedence.
    std::vector<std::string> injected;
    for (const auto& [k, v] : kv) injected.push_back("--" + k + "=" + v);
    argv_store.insert(argv_store.begin() + 1, injected.begin(), injected.end());
  }

  std::vector<const char*> argv{"nagf"};
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  const CLI::App* active = app.get_subcommands().front();
  cfg.command = active->get_name();
  if (cfg.period_us <= 0.0) cfg.period_us = cfg.command == "noncomm" ? 400.0 : 450.0;

  Header header;
  header.version = version();
  header.command = cfg.command;
  for (const auto& [k, get] : registries[cfg.command].items) header.config.emplace_back(k, get());
  std::sort(header.config.begin(), header.config.end());

  std::string text;
  try {
    const Table t = run_command(cfg);
    text = cfg.format == "json" ? render_json(header, t) : render_csv(header, t);
  } catch (const AdiabaticityError& e) {
    err << "error: adiabaticity violated: " << e.what() << " (bright_leakage=" << e.leakage() << ")\n";
    return exit_physics;
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << "\n";
    return exit_physics;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  if (cfg.out.empty()) {
    out << text;
    return out ? exit_ok : exit_io;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open output file '" << cfg.out << "'\n";
    return exit_io;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing '" << cfg.out << "'\n";
    return exit_io;
  }
  return exit_ok;
}

}  // namespace nagf::cli
