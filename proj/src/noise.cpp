#include "nagf/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nagf/errors.hpp"
#include "nagf/random.hpp"

namespace nagf {

ParameterSchedule apply_systematic(const ParameterSchedule& s, double r, double r_prime) {
  if (!(r > 0.0) || !(r_prime > 0.0)) throw InvalidInput("apply_systematic: scale factors must be positive");
  Perturbation p = s.perturbation();
  p.rabi_scale = r;
  p.detuning_scale = r_prime;
  return s.with_perturbation(p);
}

ParameterSchedule apply_random(const ParameterSchedule& s, double eta, std::uint64_t seed, int bins) {
  if (!(eta >= 0.0)) throw InvalidInput("apply_random: eta must be nonnegative");
  if (bins < 1) throw InvalidInput("apply_random: bins must be positive");
  Perturbation p = s.perturbation();
  p.rabi_noise.clear();
  if (eta == 0.0) return s.with_perturbation(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  p.rabi_noise.reserve(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) p.rabi_noise.push_back(1.0 + eta * u(rng));
  return s.with_perturbation(p);
}

State4 ideal_final_state(const RobustnessSetup& setup) {
  if (setup.loops < 1) throw InvalidInput("loops must be at least 1");
  const ParameterSchedule one = triangle_schedule(setup.loop);
  const ControlPoint start = one.point_at(0.0);
  const Unitary2 w = to_pseudospin(wilson_line(path_from_schedule(one)), start);
  return embed_pseudospin(w.pow(setup.loops).matrix() * State2(0.0, 1.0));
}

FidelityStats noisy_fidelity(const RobustnessSetup& setup, const NoiseSpec& noise) {
  const ParameterSchedule clean = repeat(triangle_schedule(setup.loop), setup.loops);
  const int steps = setup.steps > 0 ? setup.steps : default_steps(clean);
  const ParameterSchedule sys = apply_systematic(clean, noise.r, noise.r_prime);
  const State4 ideal = ideal_final_state(setup);
  const State4 psi0 = basis_state(4);

  FidelityStats st;
  if (noise.eta == 0.0) {
    st.mean = fidelity(integrate(sys, psi0, steps).final_state, ideal);
    st.trials = 1;
    return st;
  }
  if (noise.trials < 1) throw InvalidInput("noisy_fidelity: trials must be positive");
  std::vector<double> f;
  for (int i = 0; i < noise.trials; ++i) {
    const ParameterSchedule s = apply_random(sys, noise.eta, derive_seed(noise.seed, i), steps);
    f.push_back(fidelity(integrate(s, psi0, steps).final_state, ideal));
  }
  double sum = 0.0;
  for (double x : f) sum += x;
  st.mean = sum / f.size();
  double var = 0.0;
  for (double x : f) var += (x - st.mean) * (x - st.mean);
  st.std = f.size() > 1 ? std::sqrt(var / (f.size() - 1)) : 0.0;
  st.trials = noise.trials;
  return st;
}

std::vector<ScanPoint> systematic_scan(const RobustnessSetup& setup, const std::vector<double>& r_values,
                                       const std::vector<double>& r_prime_values) {
  std::vector<ScanPoint> out;
  for (double r : r_values)
    for (double rp : r_prime_values) {
      NoiseSpec n;
      n.r = r;
      n.r_prime = rp;
      out.push_back({n, noisy_fidelity(setup, n)});
    }
  return out;
}

std::vector<ScanPoint> random_scan(const RobustnessSetup& setup, const std::vector<double>& etas,
                                   int trials, std::uint64_t seed) {
  std::vector<ScanPoint> out;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    NoiseSpec n;
    n.eta = etas[i];
    n.trials = trials;
    n.seed = derive_seed(seed, i);
    out.push_back({n, noisy_fidelity(setup, n)});
  }
  return out;
}

int calibrate_shots(double p, double target, int n_averages) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("calibrate_shots: p must lie in (0, 1)");
  if (!(target > 0.0) || n_averages < 1) throw InvalidInput("calibrate_shots: bad target");
  const double shots = p * (1 - p) / (target * target * n_averages);
  return std::max(1, static_cast<int>(std::lround(shots)));
}

std::vector<ErrorBarPoint> error_bar_convergence(double p, int shots_per_average,
                                                 const std::vector<int>& n_averages,
                                                 std::uint64_t seed, int repetitions) {
  if (n_averages.empty()) throw InvalidInput("error_bar_convergence: empty averages list");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("error_bar_convergence: p must lie in [0, 1]");
  if (shots_per_average < 1 || repetitions < 2) throw InvalidInput("error_bar_convergence: bad counts");
  std::vector<ErrorBarPoint> out;
  for (std::size_t k = 0; k < n_averages.size(); ++k) {
    const int n = n_averages[k];
    if (n < 1) throw InvalidInput("error_bar_convergence: averages must be positive");
    std::mt19937_64 rng(derive_seed(seed, k));
    std::binomial_distribution<int> draw(shots_per_average, p);
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += static_cast<double>(draw(rng)) / shots_per_average;
      means.push_back(acc / n);
    }
    double m = 0.0;
    for (double x : means) m += x;
    m /= repetitions;
    double var = 0.0;
    for (double x : means) var += (x - m) * (x - m);
    out.push_back({n, std::sqrt(var / (repetitions - 1))});
  }
  return out;
}

}  // namespace nagf
