#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "nagf/atom_system.hpp"
#include "nagf/errors.hpp"
#include "nagf/evolve.hpp"
#include "nagf/gauge_field.hpp"
#include "nagf/noise.hpp"
#include "nagf/protocols.hpp"
#include "nagf/tomography.hpp"
#include "oracles.hpp"

using namespace nagf;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double operator_norm(const Complex2& m) {
  return Eigen::JacobiSVD<Complex2>(m).singularValues()(0);
}

ControlPoint random_point(std::mt19937_64& rng, double margin) {
  std::uniform_real_distribution<double> th(margin, pi - margin), ph(margin, pi / 2 - margin),
      vp(0.0, 2 * pi), om(0.5, 3.0);
  return {th(rng), ph(rng), vp(rng), om(rng)};
}

Complex2 analytic_patch_average(double th0, double v0, double dth, double dv, double phi) {
  const int m = 24;
  Complex2 acc = Complex2::Zero();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      acc += curvature_analytic({th0 + dth * (i + 0.5) / m, phi, v0 + dv * (j + 0.5) / m, 1.0}).f_theta_varphi;
  return acc / double(m * m);
}

Verdict eigensystem_check() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  double residual = 0.0, ortho = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ControlPoint p = random_point(rng, 0.0);
    const EigenSystem es = eigensystem(p);
    const Complex4 h = oracle::hamiltonian(p.theta, p.phi_mix, p.varphi, p.omega0);
    std::vector<std::pair<State4, double>> pairs{{es.dark[0], es.lower_eigenvalue},
                                                 {es.dark[1], es.lower_eigenvalue},
                                                 {es.bright[0], es.upper_eigenvalue},
                                                 {es.bright[1], es.upper_eigenvalue}};
    for (const auto& [vec, lambda] : pairs) residual = std::max(residual, (h * vec - lambda * vec).norm());
    Complex4 basis;
    for (int c = 0; c < 4; ++c) basis.col(c) = pairs[c].first;
    ortho = std::max(ortho, (basis.adjoint() * basis - Complex4::Identity()).cwiseAbs().maxCoeff());
  }
  const double dt = seconds_since(t0);
  v.require(residual < 1e-10, fmt::format("max residual {:.2e} < 1e-10", residual));
  v.require(ortho < 1e-10, fmt::format("orthonormality {:.2e} < 1e-10", ortho));
  v.require(dt < 1.0, fmt::format("runtime {:.3f}s < 1s", dt));
  return v;
}

Verdict gauge_structure_check() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2);
  double dconn = 0.0, dcurv = 0.0, a_theta = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ControlPoint p = random_point(rng, 0.1);
    const GaugeConnection an = connection_analytic(p), nu = connection_numeric(p, 1e-4);
    dconn = std::max({dconn, (an.a_theta - nu.a_theta).norm(), (an.a_phi - nu.a_phi).norm(),
                      (an.a_varphi - nu.a_varphi).norm()});
    const FieldStrength fa = curvature_analytic(p), fn = curvature_numeric(p, 1e-4);
    dcurv = std::max({dcurv, (fa.f_theta_varphi - fn.f_theta_varphi).norm(),
                      (fa.f_theta_phi - fn.f_theta_phi).norm(), (fa.f_phi_varphi - fn.f_phi_varphi).norm()});
    a_theta = std::max(a_theta, an.a_theta.norm());
  }
  const double dt = seconds_since(t0);
  v.require(dconn < 1e-6, fmt::format("connection {:.2e} < 1e-6", dconn));
  v.require(dcurv < 1e-6, fmt::format("curvature {:.2e} < 1e-6", dcurv));
  v.require(a_theta == 0.0, fmt::format("|A_theta| = {}", a_theta));
  v.require(dt < 5.0, fmt::format("runtime {:.3f}s < 5s", dt));
  return v;
}

Verdict monopole_check() {
  Verdict v;
  double lo = 1e9, hi = 0.0;
  for (int i = 1; i < 40; ++i) {
    const double th = pi * i / 40.0;
    const double n = operator_norm(spherical_field(curvature_analytic({th, pi / 8, 0.3, 1.0}), th));
    lo = std::min(lo, n), hi = std::max(hi, n);
  }
  v.require(hi - lo < 1e-10, fmt::format("analytic spread {:.2e} < 1e-10", hi - lo));
  const double d = 0.05 * pi;
  const double a = operator_norm(extract_field(0.3 * pi, 0.0, d, d, 5).fbar_spherical);
  const double b = operator_norm(extract_field(0.6 * pi, 0.0, d, d, 5).fbar_spherical);
  const double rel = std::abs(a - b) / std::max(a, b);
  v.require(rel < 0.10, fmt::format("extracted at 0.3pi/0.6pi: {:.4f} vs {:.4f}, rel {:.3f} < 0.10", a, b, rel));
  return v;
}

Verdict triple_check() {
  Verdict v;
  const auto t0 = Clock::now();
  TriangleLoop loop;
  loop.period = 45 * pi / loop.omega0;
  const ParameterSchedule s = triangle_schedule(loop);
  const HolonomyResult h = holonomy(s);
  const Unitary2 w = to_pseudospin(wilson_line(path_from_schedule(s)), s.point_at(0.0));
  const Unitary2 g = orange_slice_gate_pseudospin(loop.theta0, loop.delta_varphi, loop.phi_mix);
  const double fow = gate_fidelity(h.pseudospin, w), fog = gate_fidelity(h.pseudospin, g),
               fwg = gate_fidelity(w, g);
  const double dt = seconds_since(t0);
  v.require(fow > 0.999, fmt::format("ODE-Wilson {:.7f}", fow));
  v.require(fog > 0.999, fmt::format("ODE-slice {:.7f}", fog));
  v.require(fwg > 0.999, fmt::format("Wilson-slice {:.7f}", fwg));
  v.require(dt < 30.0, fmt::format("runtime {:.2f}s < 30s", dt));
  return v;
}

Verdict multiloop_check() {
  Verdict v;
  const auto t0 = Clock::now();
  const double p4 = multi_loop_run(0.5 * pi, 0.1 * pi, pi / 8, 5).populations.back()[3];
  v.require(std::abs(p4 - 0.94) <= 0.03, fmt::format("P4(N=5) {:.4f} = 0.94 +- 0.03", p4));
  double worst = 0.0;
  for (const auto& row : multi_loop_run(0.5 * pi, 0.0, pi / 8, 5).populations)
    worst = std::max(worst, std::abs(1.0 - row[3]));
  v.require(worst <= 0.005, fmt::format("zero width |1 - P4| {:.2e} <= 0.005", worst));
  const double dt = seconds_since(t0);
  v.require(dt < 120.0, fmt::format("runtime {:.2f}s < 120s", dt));
  return v;
}

Verdict minimal_area_check() {
  Verdict v;
  const auto res = minimal_area_scan(0.5 * pi, {1, 3, 5}, 0.011);
  const bool found = res[0].found && res[1].found && res[2].found;
  v.require(found, "all thresholds crossed");
  v.require(res[0].area > res[1].area && res[1].area > res[2].area,
            fmt::format("areas {:.4f} > {:.4f} > {:.4f}", res[0].area, res[1].area, res[2].area));
  const double ratio = res[0].area / res[2].area;
  v.require(std::abs(ratio - 4.0) <= 0.3 * 4.0, fmt::format("ratio {:.3f} = 4 +- 30%", ratio));
  return v;
}

Verdict noncomm_check() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto rows = noncommutativity_experiment(0.4 * pi, 0.415 * pi, pi / 16, {0.0, 1.0});
  const NoncommRow& full = rows[1];
  v.require(std::abs(full.p12 - 0.80) <= 0.05, fmt::format("P12 {:.4f} = 0.80 +- 0.05", full.p12));
  v.require(std::abs(full.p21 - 0.99) <= 0.03, fmt::format("P21 {:.4f} = 0.99 +- 0.03", full.p21));
  v.require(std::abs(rows[0].pd) < 5e-3, fmt::format("Pd(0) {:.2e} < 5e-3", rows[0].pd));
  const double dt = seconds_since(t0);
  v.require(dt < 60.0, fmt::format("runtime {:.2f}s < 60s", dt));
  return v;
}

Verdict root_check() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0.0, 0.9 * pi);
  std::uniform_int_distribution<int> order(2, 10);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Vec3 axis = Vec3(gauss(rng), gauss(rng), gauss(rng)).normalized();
    const Unitary2 u = su2_exp(angle(rng), axis);
    const int n = order(rng);
    worst = std::max(worst, (nth_root_su2(u, n).root.pow(n).matrix() - u.matrix()).norm());
  }
  v.require(worst < 1e-9, fmt::format("round trip {:.2e} < 1e-9", worst));
  const Unitary2 step = su2_exp(0.8, Vec3(0, 0.6, 0.8));
  std::vector<Unitary2> per_loop;
  for (int k = 1; k <= 5; ++k) per_loop.push_back(step.pow(k));
  bool fired = false;
  try {
    extract_single_loop(per_loop);
  } catch (const WindingError&) {
    fired = true;
  }
  v.require(fired, "winding guard at N*eta = 4.0 > pi");
  const double dt = seconds_since(t0);
  v.require(dt < 1.0, fmt::format("runtime {:.3f}s < 1s", dt));
  return v;
}

Verdict tomography_check() {
  Verdict v;
  std::mt19937_64 rng(9);
  double worst = 1.0;
  for (int k = 0; k < 200; ++k) {
    const Unitary2 u(oracle::random_su2(rng));
    const Reconstruction rec = reconstruct_unitary({exact_record(u, InputState::two), exact_record(u, InputState::four),
                                                    exact_record(u, InputState::plus)});
    worst = std::min(worst, gate_fidelity(rec.unitary, u));
  }
  v.require(worst > 1 - 1e-6, fmt::format("exact round trip min fidelity {:.10f}", worst));

  const std::vector<int> ladder{100, 1000, 10000, 100000};
  std::vector<double> err;
  const int trials = 40;
  for (int shots : ladder) {
    double sum2 = 0.0;
    for (int k = 0; k < trials; ++k) {
      std::mt19937_64 pick(100 + k);
      const Unitary2 u(oracle::random_su2_bounded(pick, 0.45 * pi));
      std::vector<TomographyRecord> recs;
      int i = 0;
      for (InputState in : {InputState::two, InputState::four, InputState::plus})
        recs.push_back(measure_record(embed_pseudospin(u.matrix() * input_vector(in)), in, shots,
                                      1000u * k + 10u * i++ + 7u));
      sum2 += std::pow((reconstruct_unitary(recs).unitary.matrix() - u.matrix()).norm(), 2);
    }
    err.push_back(std::sqrt(sum2 / trials));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double x = std::log10(double(ladder[i])), y = std::log10(err[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double n = double(ladder.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  v.require(std::abs(slope + 0.5) < 0.1,
            fmt::format("rms error {:.2e}/{:.2e}/{:.2e}/{:.2e}, log slope {:.3f} = -0.5 +- 0.1", err[0], err[1],
                        err[2], err[3], slope));

  TomographyRecord r;
  r.input = InputState::four;
  r.expectation = Vec3(0.334, 0.299, -0.894);
  const Unitary2 root = nth_root_su2(reconstruct_unitary({r}).unitary, 5).root;
  TriangleLoop loop;
  loop.period = 45 * pi / loop.omega0;
  const double f = gate_fidelity(root, holonomy(triangle_schedule(loop)).pseudospin);
  v.require(f > 0.99, fmt::format("fifth-loop Bloch triple root vs single loop {:.6f} > 0.99", f));
  return v;
}

Verdict field_map_check() {
  Verdict v;
  const auto t0 = Clock::now();
  const double d = 0.05 * pi;
  double min_f12 = 1e9, max_abelian = 0.0, worst_rel = 0.0;
  for (int i = 0; i <= 15; ++i) {
    const double th0 = (0.1 + 0.05 * i) * pi;
    const FieldEstimate f = extract_field(th0, 0.0, d, d, 5, pi / 8);
    const Complex2 ref = analytic_patch_average(th0, 0.0, d, d, pi / 8);
    min_f12 = std::min(min_f12, std::abs(f.fbar(0, 1)));
    for (auto [r, c] : {std::pair{0, 0}, std::pair{0, 1}}) {
      const double rel = std::abs(std::abs(f.fbar(r, c)) - std::abs(ref(r, c))) / std::abs(ref(r, c));
      worst_rel = std::max(worst_rel, rel);
    }
    const FieldEstimate a = extract_field(th0, 0.0, d, d, 5, 0.0);
    max_abelian = std::max(max_abelian, std::abs(a.fbar(0, 1)));
  }
  const double dt = seconds_since(t0);
  v.require(min_f12 > 0.05, fmt::format("min |F12| at phi=pi/8 {:.4f} > 0.05", min_f12));
  v.require(max_abelian < 1e-3, fmt::format("max |F12| at phi=0 {:.2e} < 1e-3", max_abelian));
  v.require(worst_rel < 0.10, fmt::format("worst deviation from patch average {:.3f} < 0.10", worst_rel));
  v.require(dt < 300.0, fmt::format("runtime {:.1f}s < 300s", dt));
  return v;
}

Verdict noise_check() {
  Verdict v;
  const RobustnessSetup setup;
  const State4 psi = integrate(triangle_schedule(setup.loop), basis_state(4)).final_state;
  const double adiabatic_error = 1.0 - std::abs(ideal_final_state(setup).dot(psi));
  const double clean = noisy_fidelity(setup, NoiseSpec{}).mean;
  v.require(std::abs(clean - (1.0 - adiabatic_error)) < 1e-12,
            fmt::format("clean {:.9f} = 1 - {:.2e}", clean, adiabatic_error));

  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.95 + 0.01 * i);
  double worst = 1.0;
  std::string archive = "r scan";
  for (const auto& pt : systematic_scan(setup, grid, {1.0})) {
    worst = std::min(worst, pt.stats.mean);
    archive += fmt::format(" {:.2f}:{:.6f}", pt.spec.r, pt.stats.mean);
  }
  archive += "; r' scan";
  for (const auto& pt : systematic_scan(setup, {1.0}, grid)) {
    worst = std::min(worst, pt.stats.mean);
    archive += fmt::format(" {:.2f}:{:.6f}", pt.spec.r_prime, pt.stats.mean);
  }
  v.require(worst > 0.99, fmt::format("min over |r-1|,|r'-1| <= 0.05 {:.6f} > 0.99 ({})", worst, archive));

  const auto scan = random_scan(setup, {0.0, 0.05, 0.1, 0.15, 0.2}, 30, 11);
  bool monotone = true;
  std::string ladder;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    ladder += fmt::format(" {:.2f}:{:.6f}+-{:.1e}", scan[i].spec.eta, scan[i].stats.mean, scan[i].stats.std);
    if (i > 0)
      monotone = monotone && scan[i].stats.mean <= scan[i - 1].stats.mean + scan[i].stats.std + scan[i - 1].stats.std;
  }
  v.require(monotone, "eta ladder nonincreasing within 1 sigma:" + ladder);
  return v;
}

Verdict error_bar_check() {
  Verdict v;
  const double p = multi_loop_run(0.5 * pi, 0.1 * pi, pi / 8, 5).populations.back()[3];
  const int shots = calibrate_shots(p);
  const std::vector<int> ns{1, 4, 16, 20, 64};
  const auto pts = error_bar_convergence(p, shots, ns, 12, 4000);
  double at20 = 0.0, worst = 0.0;
  for (const auto& e : pts) {
    const double expect = std::sqrt(p * (1 - p) / (double(shots) * e.n_averages));
    worst = std::max(worst, std::abs(e.std_of_mean / expect - 1.0));
    if (e.n_averages == 20) at20 = e.std_of_mean;
  }
  v.require(std::abs(at20 - 0.011) <= 0.003, fmt::format("shots {}, std at n=20 {:.4f} = 0.011 +- 0.003", shots, at20));
  v.require(worst < 0.10, fmt::format("max deviation from 1/sqrt(n) {:.3f} < 0.10", worst));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::function<Verdict()>> criteria{
      eigensystem_check, gauge_structure_check, monopole_check, triple_check, multiloop_check, minimal_area_check,
      noncomm_check,     root_check,            tomography_check, field_map_check, noise_check, error_bar_check};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += v.pass ? 0 : 1;
    fmt::print("criterion {}: {} {}\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
