#pragma once

#include <array>

#include "nagf/su2.hpp"

namespace nagf {

// Point (θ, φ, ϕ) in parameter space with energy scale Ω0 (rad/s).
struct ControlPoint {
  double theta = 0.0;
  double phi_mix = 0.0;
  double varphi = 0.0;
  double omega0 = 1.0;

  void validate() const;
};

// Drive amplitudes for one instant. Perturbed schedules may break
// rabi² + g² + detuning² = Ω0².
struct Couplings {
  double rabi = 0.0;
  double g = 0.0;
  double detuning = 0.0;
  double varphi = 0.0;

  double magnitude() const;
};

Couplings couplings(const ControlPoint& p);

Complex4 hamiltonian(const Couplings& c);
Complex4 build_hamiltonian(const ControlPoint& p);

struct EigenSystem {
  std::array<State4, 2> dark;
  std::array<State4, 2> bright;
  double lower_eigenvalue = 0.0;
  double upper_eigenvalue = 0.0;
};

EigenSystem eigensystem(const ControlPoint& p);

// Closed-form dark pair only; the fixed gauge used for differentiation.
std::array<State4, 2> dark_states(double theta, double phi_mix, double varphi);

// Columns: D1, D2 expressed in the (|2⟩, |4⟩) basis. Requires θ = 0.
Unitary2 dark_frame_at_origin(const ControlPoint& p);

// Levels are numbered 1..4.
State4 basis_state(int level);
State2 pseudospin_part(const State4& psi);
State4 embed_pseudospin(const State2& s);

}  // namespace nagf
