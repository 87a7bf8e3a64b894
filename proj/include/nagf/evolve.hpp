#pragma once

#include <vector>

#include "nagf/gauge_field.hpp"
#include "nagf/schedule.hpp"

namespace nagf {

// Lower bound on the step count: 20 steps per period of 2Ω0.
int minimum_steps(const ParameterSchedule& s);
// Default step count: 100 per period of 2Ω0.
int default_steps(const ParameterSchedule& s);

struct EvolutionResult {
  State4 final_state = State4::Zero();
  double bright_leakage = 0.0;    // population outside the final dark pair
  double dynamical_phase = 0.0;   // ∫λ_dark dt
  double norm_drift = 0.0;        // Σ |‖ψ‖ − 1| removed by renormalization
  int steps = 0;
};

// Fixed-step RK4 for i ψ̇ = H(t) ψ. steps ≤ 0 selects default_steps.
EvolutionResult integrate(const ParameterSchedule& s, const State4& psi0, int steps = 0);

struct Propagation {
  Complex4 propagator = Complex4::Identity();
  double dynamical_phase = 0.0;
  double norm_drift = 0.0;
  int steps = 0;
  // Propagator and ∫λ_dark up to each requested checkpoint time.
  std::vector<Complex4> checkpoint_propagators;
  std::vector<double> checkpoint_phases;
};

Propagation propagate(const ParameterSchedule& s, int steps = 0,
                      const std::vector<double>& checkpoints = {});

struct HolonomyResult {
  Unitary2 pseudospin;      // (|2⟩,|4⟩) basis
  Unitary2 dark;            // {D_j(T)} ← {D_k(0)} basis
  Complex2 raw = Complex2::Zero();  // phase-stripped projection before unitarization
  double bright_leakage = 0.0;
  double dynamical_phase = 0.0;
};

// Dark-pair holonomy of a schedule that starts and ends at θ = 0.
HolonomyResult holonomy(const ParameterSchedule& s, int steps = 0, double max_leakage = 0.05);

// Same, read off an already computed full propagator.
HolonomyResult holonomy_from_propagator(const Complex4& u, double dynamical_phase,
                                        const ControlPoint& start, const ControlPoint& end,
                                        double max_leakage = 0.05);

// ∮cos²(θ/2)dϕ reduced to the enclosed-area form sin²(θ0/2)·Δϕ.
double orange_slice_loop_integral(double theta0, double delta_varphi);

// [[cosκ e^{iβ}, i sinκ e^{−iβ}], [i sinκ e^{iβ}, cosκ e^{−iβ}]], κ = cosφ sinφ L,
// β = cos²φ L with L the loop integral. Expressed in the dark pair at ϕ0 = 0.
Unitary2 orange_slice_gate(double theta0, double delta_varphi, double phi_mix);
Unitary2 orange_slice_gate_pseudospin(double theta0, double delta_varphi, double phi_mix);

RotationAxisForm rotation_form(const Unitary2& u, const Tolerances& tol = {});

// Samples the schedule's path for wilson_line, keeping both sides of each breakpoint.
ParamPath path_from_schedule(const ParameterSchedule& s, int legs = 400, int segments_per_leg = 100);

}  // namespace nagf
