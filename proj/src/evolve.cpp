#include "nagf/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nagf/errors.hpp"

namespace nagf {

namespace {

using Columns = Eigen::Matrix<cplx, 4, Eigen::Dynamic>;

double rabi_periods(const ParameterSchedule& s) {
  return 2.0 * s.omega0() * s.duration() / (2 * pi);
}

struct RunOutput {
  double phase = 0.0;
  double drift = 0.0;
  int steps = 0;
  std::vector<Columns> checkpoint_states;
  std::vector<double> checkpoint_phases;
};

// Evolves the columns of `state` in place.
RunOutput run(const ParameterSchedule& s, Columns& state, int steps,
              const std::vector<double>& checkpoints) {
  if (steps <= 0) steps = default_steps(s);
  if (steps < minimum_steps(s))
    throw InvalidInput("integrate: " + std::to_string(steps) + " steps is below the minimum of " +
                       std::to_string(minimum_steps(s)));
  const double T = s.duration();
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 0.0 || checkpoints[i] > T) throw InvalidInput("checkpoint outside [0, T]");
    if (i > 0 && checkpoints[i] < checkpoints[i - 1]) throw InvalidInput("checkpoints must be sorted");
  }

  std::vector<double> cuts{0.0, T};
  for (double b : s.breakpoints()) cuts.push_back(b);
  for (double c : checkpoints) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  RunOutput out;
  std::size_t next_cp = 0;
  auto record = [&](double t) {
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == t) {
      out.checkpoint_states.push_back(state);
      out.checkpoint_phases.push_back(out.phase);
      ++next_cp;
    }
  };
  record(0.0);

  const cplx minus_i{0.0, -1.0};
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double a = cuts[seg], b = cuts[seg + 1];
    const int n = std::max(1, static_cast<int>(std::lround(steps * (b - a) / T)));
    const double h = (b - a) / n;
    for (int k = 0; k < n; ++k) {
      const double t0 = a + k * h;
      const double tm = t0 + h / 2;
      // The final stage takes the left limit so a jump at b is not seen early.
      const double t1 = (k == n - 1) ? std::nextafter(b, a) : t0 + h;
      const Couplings c0 = s.couplings_at(t0, tm);
      const Couplings cm = s.couplings_at(tm, tm);
      const Couplings c1 = s.couplings_at(t1, tm);
      const Complex4 h0 = minus_i * hamiltonian(c0);
      const Complex4 hm = minus_i * hamiltonian(cm);
      const Complex4 h1 = minus_i * hamiltonian(c1);

      const Columns k1 = h0 * state;
      const Columns k2 = hm * (state + (h / 2) * k1);
      const Columns k3 = hm * (state + (h / 2) * k2);
      const Columns k4 = h1 * (state + h * k3);
      state += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);

      for (Eigen::Index col = 0; col < state.cols(); ++col) {
        const double nrm = state.col(col).norm();
        if (!std::isfinite(nrm) || nrm == 0.0) throw PhysicsError("integrate: state became non-finite");
        out.drift += std::abs(nrm - 1.0);
        state.col(col) /= nrm;
      }
      out.phase -= (h / 12) * (c0.magnitude() + 4 * cm.magnitude() + c1.magnitude());
      ++out.steps;
    }
    record(b);
  }
  return out;
}

}  // namespace

int minimum_steps(const ParameterSchedule& s) {
  return static_cast<int>(std::ceil(20.0 * rabi_periods(s)));
}

int default_steps(const ParameterSchedule& s) {
  return static_cast<int>(std::ceil(100.0 * rabi_periods(s)));
}

EvolutionResult integrate(const ParameterSchedule& s, const State4& psi0, int steps) {
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw InvalidInput("integrate: initial state not normalized");
  Columns state = psi0;
  const RunOutput r = run(s, state, steps, {});
  EvolutionResult out;
  out.final_state = state.col(0);
  out.dynamical_phase = r.phase;
  out.norm_drift = r.drift;
  out.steps = r.steps;
  // Population outside the dark pair at the final point, i.e. on the bright pair.
  const auto dark = dark_states(s.point_at(s.duration()).theta, s.point_at(s.duration()).phi_mix,
                                s.point_at(s.duration()).varphi);
  double in_dark = 0.0;
  for (const auto& d : dark) in_dark += std::norm(d.dot(out.final_state));
  out.bright_leakage = std::clamp(1.0 - in_dark, 0.0, 1.0);
  return out;
}

Propagation propagate(const ParameterSchedule& s, int steps, const std::vector<double>& checkpoints) {
  Columns state = Complex4::Identity();
  const RunOutput r = run(s, state, steps, checkpoints);
  Propagation out;
  out.propagator = state;
  out.dynamical_phase = r.phase;
  out.norm_drift = r.drift;
  out.steps = r.steps;
  for (const auto& c : r.checkpoint_states) out.checkpoint_propagators.emplace_back(c);
  out.checkpoint_phases = r.checkpoint_phases;
  return out;
}

HolonomyResult holonomy_from_propagator(const Complex4& u, double dynamical_phase,
                                        const ControlPoint& start, const ControlPoint& end,
                                        double max_leakage) {
  if (std::abs(start.theta) > 1e-12 || std::abs(end.theta) > 1e-12)
    throw InvalidInput("holonomy: schedule must start and end at theta = 0");
  const auto d0 = dark_states(start.theta, start.phi_mix, start.varphi);
  const auto d1 = dark_states(end.theta, end.phi_mix, end.varphi);
  const cplx strip = std::polar(1.0, dynamical_phase);
  Complex2 m;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) m(j, k) = strip * d1[j].dot(u * d0[k]);

  HolonomyResult out;
  out.raw = m;
  out.dynamical_phase = dynamical_phase;
  for (int k = 0; k < 2; ++k)
    out.bright_leakage = std::max(out.bright_leakage, 1.0 - m.col(k).squaredNorm());
  out.bright_leakage = std::clamp(out.bright_leakage, 0.0, 1.0);
  if (out.bright_leakage > max_leakage)
    throw AdiabaticityError("holonomy: bright leakage " + std::to_string(out.bright_leakage) +
                                " exceeds " + std::to_string(max_leakage),
                            out.bright_leakage);
  out.dark = unitarize(m);
  out.pseudospin = dark_frame_at_origin(end) * out.dark * dark_frame_at_origin(start).adjoint();
  return out;
}

HolonomyResult holonomy(const ParameterSchedule& s, int steps, double max_leakage) {
  const ControlPoint start = s.point_at(0.0), end = s.point_at(s.duration());
  if (std::abs(start.theta) > 1e-12 || std::abs(end.theta) > 1e-12)
    throw InvalidInput("holonomy: schedule must start and end at theta = 0");
  const Propagation p = propagate(s, steps);
  return holonomy_from_propagator(p.propagator, p.dynamical_phase, start, end, max_leakage);
}

double orange_slice_loop_integral(double theta0, double delta_varphi) {
  const double s = std::sin(theta0 / 2);
  return s * s * delta_varphi;
}

Unitary2 orange_slice_gate(double theta0, double delta_varphi, double phi_mix) {
  const double l = orange_slice_loop_integral(theta0, delta_varphi);
  const double kappa = std::cos(phi_mix) * std::sin(phi_mix) * l;
  const double beta = std::cos(phi_mix) * std::cos(phi_mix) * l;
  const cplx eb = std::polar(1.0, beta);
  Complex2 m;
  m << std::cos(kappa) * eb, I_unit * std::sin(kappa) * std::conj(eb),
       I_unit * std::sin(kappa) * eb, std::cos(kappa) * std::conj(eb);
  return Unitary2::from_trusted(m);
}

Unitary2 orange_slice_gate_pseudospin(double theta0, double delta_varphi, double phi_mix) {
  return to_pseudospin(orange_slice_gate(theta0, delta_varphi, phi_mix), {0.0, phi_mix, 0.0, 1.0});
}

RotationAxisForm rotation_form(const Unitary2& u, const Tolerances& tol) {
  return su2_log(u, tol);
}

ParamPath path_from_schedule(const ParameterSchedule& s, int legs, int segments_per_leg) {
  if (legs < 1) throw InvalidInput("path_from_schedule: legs must be positive");
  const double T = s.duration();
  std::vector<double> times;
  for (int i = 0; i <= legs; ++i) times.push_back(T * i / legs);
  for (double b : s.breakpoints()) {
    times.push_back(std::nextafter(b, 0.0));
    times.push_back(b);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  ParamPath path;
  path.segments_per_leg = segments_per_leg;
  for (double t : times) path.waypoints.push_back(s.point_at(t));
  // The last sample is the left limit at T.
  path.waypoints.back() = s.point_at(std::nextafter(T, 0.0));
  path.waypoints.push_back(s.point_at(T));

  const ControlPoint& a = path.waypoints.front();
  const ControlPoint b = path.waypoints.back();
  // Returning along θ = 0 changes only the dark-pair labels, not the state.
  if (a.theta == 0.0 && b.theta == 0.0) {
    if (b.phi_mix != a.phi_mix || b.varphi != a.varphi) {
      ControlPoint mid = b;
      mid.phi_mix = a.phi_mix;
      path.waypoints.push_back(mid);
      path.waypoints.push_back(a);
    }
    path.closed = true;
  } else {
    path.closed = false;
  }
  return path;
}

}  // namespace nagf
