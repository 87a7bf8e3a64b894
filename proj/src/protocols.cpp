#include "nagf/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "nagf/errors.hpp"

namespace nagf {

namespace {

TriangleLoop make_loop(double theta0, double delta_varphi, double phi_mix, const LoopOptions& o) {
  TriangleLoop l;
  l.theta0 = theta0;
  l.delta_varphi = delta_varphi;
  l.phi_mix = phi_mix;
  l.varphi0 = o.varphi0;
  l.omega0 = o.omega0;
  l.period = o.period;
  l.ramp_fraction = o.ramp_fraction;
  return l;
}

// Rotation angle of a†b with any global phase ignored.
double operator_mismatch(const Unitary2& a, const Unitary2& b) {
  const double c = std::abs((a.matrix().adjoint() * b.matrix()).trace()) / 2.0;
  return std::acos(std::min(1.0, c));
}

}  // namespace

Unitary2 extract_single_loop(const std::vector<Unitary2>& per_loop, double winding_tolerance) {
  if (per_loop.empty()) throw InvalidInput("extract_single_loop: no loop operators");
  const int n = static_cast<int>(per_loop.size());
  const RootResult r = nth_root_su2(per_loop.back(), n);
  const double mismatch = operator_mismatch(r.root, per_loop.front());
  if (mismatch > winding_tolerance)
    throw WindingError("principal " + std::to_string(n) + "-th root disagrees with the first loop by " +
                           std::to_string(mismatch) + " rad",
                       mismatch);
  return r.root;
}

MultiLoopReport multi_loop_run(double theta0, double delta_varphi, double phi_mix, int n,
                               const LoopOptions& opts) {
  if (n < 1) throw InvalidInput("multi_loop_run: N must be at least 1");
  const ParameterSchedule one = triangle_schedule(make_loop(theta0, delta_varphi, phi_mix, opts));
  const ParameterSchedule all = repeat(one, n);
  const int per_loop = opts.steps_per_loop > 0 ? opts.steps_per_loop : default_steps(one);

  std::vector<double> checkpoints;
  for (int k = 1; k <= n; ++k) checkpoints.push_back(k * one.duration());
  checkpoints.back() = all.duration();
  const Propagation p = propagate(all, per_loop * n, checkpoints);

  MultiLoopReport rep;
  rep.loops = n;
  const ControlPoint start = one.point_at(0.0);
  const ControlPoint end = one.point_at(one.duration());
  for (int k = 0; k < n; ++k) {
    const Complex4& u = p.checkpoint_propagators[static_cast<std::size_t>(k)];
    std::array<double, 4> pops{};
    for (int i = 0; i < 4; ++i) pops[static_cast<std::size_t>(i)] = std::norm(u(i, 3));
    rep.populations.push_back(pops);
    const HolonomyResult h = holonomy_from_propagator(
        u, p.checkpoint_phases[static_cast<std::size_t>(k)], start, end, opts.max_leakage);
    rep.bright_leakage = std::max(rep.bright_leakage, h.bright_leakage);
    rep.loop_operators.push_back(h.pseudospin);
  }
  rep.u_n = rep.loop_operators.back();
  rep.single_loop = extract_single_loop(rep.loop_operators, opts.winding_tolerance);
  return rep;
}

std::vector<MinimalArea> minimal_area_scan(double theta0, const std::vector<int>& loop_counts,
                                           double threshold, double phi_mix,
                                           const LoopOptions& opts, double max_delta_varphi) {
  if (!(threshold > 0.0)) throw InvalidInput("minimal_area_scan: threshold must be positive");
  if (!(max_delta_varphi > 0.0)) throw InvalidInput("minimal_area_scan: scan range must be positive");
  std::map<double, Complex4> cache;
  auto single = [&](double dv) -> const Complex4& {
    auto it = cache.find(dv);
    if (it != cache.end()) return it->second;
    const ParameterSchedule s = triangle_schedule(make_loop(theta0, dv, phi_mix, opts));
    return cache.emplace(dv, propagate(s, opts.steps_per_loop).propagator).first->second;
  };
  auto deviation = [&](double dv, int n) {
    Complex4 u = Complex4::Identity();
    const Complex4& one = single(dv);
    for (int k = 0; k < n; ++k) u = one * u;
    return std::abs(1.0 - std::norm(u(3, 3)));
  };

  constexpr int grid = 48;
  std::vector<MinimalArea> out;
  for (int n : loop_counts) {
    if (n < 1) throw InvalidInput("minimal_area_scan: loop counts must be positive");
    MinimalArea m;
    m.loops = n;
    double lo = 0.0, hi = -1.0;
    for (int i = 1; i <= grid; ++i) {
      const double dv = max_delta_varphi * i / grid;
      if (deviation(dv, n) >= threshold) {
        hi = dv;
        break;
      }
      lo = dv;
    }
    if (hi > 0.0) {
      while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        (deviation(mid, n) >= threshold ? hi : lo) = mid;
      }
      m.found = true;
      m.delta_varphi = hi;
      m.area = theta0 * hi;
    }
    out.push_back(m);
  }
  return out;
}

FieldEstimate extract_field(double theta0, double varphi0, double d_theta, double d_varphi, int n,
                            double phi_mix, const LoopOptions& opts) {
  constexpr double max_side = 0.1 * pi + 1e-12;
  if (!(d_theta > 0.0 && d_theta <= max_side) || !(d_varphi > 0.0 && d_varphi <= max_side))
    throw InvalidInput("extract_field: patch sides must lie in (0, 0.1π]");
  if (theta0 < 0.0 || theta0 + d_theta > pi) throw InvalidInput("extract_field: patch leaves [0, π]");

  FieldEstimate f;
  f.theta0 = theta0;
  f.varphi0 = varphi0;
  f.d_theta = d_theta;
  f.d_varphi = d_varphi;
  f.area = d_theta * d_varphi;
  f.theta_mid = theta0 + d_theta / 2;

  LoopOptions o = opts;
  o.varphi0 = varphi0;
  const ControlPoint origin{0.0, phi_mix, varphi0, o.omega0};
  // The ODE operators carry a small θ0-dependent global phase from the
  // non-adiabatic energy shift; only the SU(2) parts are compared.
  auto loop_op = [&](double th) {
    const Unitary2 u = to_dark_frame(multi_loop_run(th, d_varphi, phi_mix, n, o).single_loop, origin);
    return Unitary2::from_trusted(strip_global_phase(u.matrix()));
  };
  f.u1 = loop_op(theta0);
  f.u2 = loop_op(theta0 + d_theta);
  f.fbar = (f.u2.matrix() - f.u1.matrix()) / f.area;

  const double st = std::sin(f.theta_mid);
  if (std::abs(st) <= 1e-6) throw PoleError("extract_field: patch centre too close to a pole");
  f.fbar_spherical = f.fbar / st;
  return f;
}

std::vector<NoncommRow> noncommutativity_experiment(double theta1, double theta2, double gamma,
                                                    const std::vector<double>& gamma_primes,
                                                    const NoncommOptions& opts) {
  std::vector<NoncommRow> rows;
  const State4 psi0 = basis_state(4);
  for (double gp : gamma_primes) {
    if (gp < 0.0 || gp > 1.0) throw InvalidInput("gamma_prime must lie in [0, 1]");
    const double g = gp * gamma;
    const ParameterSchedule s1 = c1_schedule(theta1, g, opts.omega0, opts.period);
    const ParameterSchedule s2 = c2_schedule(theta2, g, opts.omega0, opts.period);
    const Propagation p1 = propagate(s1, opts.steps);
    const Propagation p2 = propagate(s2, opts.steps);

    NoncommRow r;
    r.gamma_prime = gp;
    const State4 a = p2.propagator * (p1.propagator * psi0);  // C1 then C2
    const State4 b = p1.propagator * (p2.propagator * psi0);  // C2 then C1
    r.p12 = std::norm(a(1));
    r.p21 = std::norm(b(1));
    r.pd = r.p12 - r.p21;
    r.p4_12 = std::norm(a(3));
    r.p4_21 = std::norm(b(3));

    const HolonomyResult h1 = holonomy_from_propagator(p1.propagator, p1.dynamical_phase,
                                                       s1.point_at(0.0), s1.point_at(s1.duration()),
                                                       opts.max_leakage);
    const HolonomyResult h2 = holonomy_from_propagator(p2.propagator, p2.dynamical_phase,
                                                       s2.point_at(0.0), s2.point_at(s2.duration()),
                                                       opts.max_leakage);
    r.u1 = h1.pseudospin;
    r.u2 = h2.pseudospin;
    const Unitary2 uo = h2.pseudospin * h1.pseudospin;
    const Unitary2 uco = h1.pseudospin * h2.pseudospin;
    r.pd_operator = std::norm(uo(0, 1)) - std::norm(uco(0, 1));
    const Complex2 comm = uo.matrix() - uco.matrix();
    r.commutator_norm = Eigen::JacobiSVD<Complex2>(comm).singularValues()(0);
    r.bright_leakage = std::max({h1.bright_leakage, h2.bright_leakage,
                                 std::clamp(1.0 - r.p12 - r.p4_12, 0.0, 1.0),
                                 std::clamp(1.0 - r.p21 - r.p4_21, 0.0, 1.0)});
    if (r.bright_leakage > opts.max_leakage)
      throw AdiabaticityError("noncommutativity: bright leakage " + std::to_string(r.bright_leakage),
                              r.bright_leakage);
    rows.push_back(r);
  }
  return rows;
}

double synthetic_rabi(double omega_a, double omega_b, double phase_ab) {
  if (omega_a < 0.0 || omega_b < 0.0) throw InvalidInput("synthetic_rabi: amplitudes must be nonnegative");
  const double v = omega_a * omega_a + omega_b * omega_b + 2 * omega_a * omega_b * std::cos(phase_ab);
  return std::sqrt(std::max(0.0, v));
}

}  // namespace nagf
