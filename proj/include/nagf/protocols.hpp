#pragma once

#include <array>
#include <vector>

#include "nagf/evolve.hpp"

namespace nagf {

struct LoopOptions {
  double omega0 = 2 * pi * 50e3;
  double period = 450e-6;
  double varphi0 = 0.0;
  double ramp_fraction = 0.2;
  int steps_per_loop = 0;      // ≤ 0: default for one loop
  double max_leakage = 0.05;
  double winding_tolerance = 0.1;  // rad, principal root vs first loop
};

struct MultiLoopReport {
  int loops = 0;
  // Bare populations P1..P4 after each loop, starting from |4⟩.
  std::vector<std::array<double, 4>> populations;
  // Pseudospin operator after k = 1..N loops.
  std::vector<Unitary2> loop_operators;
  Unitary2 u_n;
  Unitary2 single_loop;  // principal N-th root of u_n
  double bright_leakage = 0.0;  // worst over loops
};

MultiLoopReport multi_loop_run(double theta0, double delta_varphi, double phi_mix, int n,
                               const LoopOptions& opts = {});

// Principal N-th root of the last operator, checked against the first.
Unitary2 extract_single_loop(const std::vector<Unitary2>& per_loop, double winding_tolerance = 0.1);

struct MinimalArea {
  int loops = 0;
  double delta_varphi = 0.0;  // smallest Δϕ with |1 − P4| ≥ threshold
  double area = 0.0;          // θ0·Δϕ
  bool found = false;
};

std::vector<MinimalArea> minimal_area_scan(double theta0, const std::vector<int>& loop_counts,
                                           double threshold = 0.011, double phi_mix = pi / 8,
                                           const LoopOptions& opts = {},
                                           double max_delta_varphi = 0.5 * pi);

struct FieldEstimate {
  Complex2 fbar = Complex2::Zero();
  Complex2 fbar_spherical = Complex2::Zero();
  double theta0 = 0.0, varphi0 = 0.0, d_theta = 0.0, d_varphi = 0.0;
  double area = 0.0;      // Δθ·Δϕ
  double theta_mid = 0.0;
  Unitary2 u1, u2;        // single-loop operators in the dark pair at the origin
};

// (U2 − U1)/(ΔθΔϕ) from triangles reaching θ0 and θ0 + Δθ.
FieldEstimate extract_field(double theta0, double varphi0, double d_theta, double d_varphi,
                            int n, double phi_mix = pi / 8, const LoopOptions& opts = {});

struct NoncommRow {
  double gamma_prime = 0.0;
  double p12 = 0.0;   // P(|2⟩) after C1 then C2
  double p21 = 0.0;   // P(|2⟩) after C2 then C1
  double pd = 0.0;
  double p4_12 = 0.0, p4_21 = 0.0;
  double pd_operator = 0.0;  // from |U_o^{12}|² − |U_co^{12}|²
  double commutator_norm = 0.0;
  double bright_leakage = 0.0;
  Unitary2 u1, u2;
};

struct NoncommOptions {
  double omega0 = 2 * pi * 50e3;
  double period = 400e-6;
  int steps = 0;
  double max_leakage = 0.05;
};

std::vector<NoncommRow> noncommutativity_experiment(double theta1, double theta2, double gamma,
                                                    const std::vector<double>& gamma_primes,
                                                    const NoncommOptions& opts = {});

// √(Ωa² + Ωb² + 2ΩaΩb cos φab)
double synthetic_rabi(double omega_a, double omega_b, double phase_ab);

}  // namespace nagf
