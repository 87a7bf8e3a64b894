#pragma once

#include <cstdint>
#include <vector>

#include "nagf/evolve.hpp"

namespace nagf {

struct NoiseSpec {
  double r = 1.0;        // Ω′ = rΩ (g scales with Ω)
  double r_prime = 1.0;  // Δ′ = r′Δ
  double eta = 0.0;      // Ω′ = (1 + η·rand)Ω, rand ~ U(−1, 1) per step
  std::uint64_t seed = 0;
  int trials = 30;
};

ParameterSchedule apply_systematic(const ParameterSchedule& s, double r, double r_prime);

// One realization; `bins` is the number of integration steps the schedule
// will be run with. Keeps any systematic scaling already applied.
ParameterSchedule apply_random(const ParameterSchedule& s, double eta, std::uint64_t seed, int bins);

// Triangle loops from |4⟩ whose final state is compared with the geometric ideal.
struct RobustnessSetup {
  TriangleLoop loop;
  int loops = 1;
  int steps = 0;  // total over all loops; ≤ 0 selects the default
};

// Wilson-line evolution of |4⟩ through the loops, embedded in the four levels.
State4 ideal_final_state(const RobustnessSetup& setup);

struct FidelityStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation over trials; 0 for one run
  int trials = 0;
};

// Mean and spread of |⟨ψ_ideal|ψ_noisy⟩|. With eta = 0 a single run is made.
FidelityStats noisy_fidelity(const RobustnessSetup& setup, const NoiseSpec& noise);

struct ScanPoint {
  NoiseSpec spec;
  FidelityStats stats;
};

std::vector<ScanPoint> systematic_scan(const RobustnessSetup& setup, const std::vector<double>& r_values,
                                       const std::vector<double>& r_prime_values);
std::vector<ScanPoint> random_scan(const RobustnessSetup& setup, const std::vector<double>& etas,
                                   int trials, std::uint64_t seed);

// Shots per measurement so that the mean of `n_averages` measurements of a
// population p has standard deviation `target`.
int calibrate_shots(double p, double target = 0.011, int n_averages = 20);

struct ErrorBarPoint {
  int n_averages = 0;
  double std_of_mean = 0.0;
};

// Spread of the n-measurement average of a population p over `repetitions`
// simulated experiments.
std::vector<ErrorBarPoint> error_bar_convergence(double p, int shots_per_average,
                                                 const std::vector<int>& n_averages,
                                                 std::uint64_t seed, int repetitions = 2000);

}  // namespace nagf
