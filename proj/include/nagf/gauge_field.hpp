#pragma once

#include <vector>

#include "nagf/atom_system.hpp"

namespace nagf {

enum class Coord { theta, phi_mix, varphi };

// Connection A_μ with A^{jk} = ⟨D_j|∂_μ D_k⟩ in the closed-form dark gauge.
struct GaugeConnection {
  Complex2 a_theta = Complex2::Zero();
  Complex2 a_phi = Complex2::Zero();
  Complex2 a_varphi = Complex2::Zero();

  const Complex2& operator[](Coord mu) const;
};

struct FieldStrength {
  Complex2 f_theta_varphi = Complex2::Zero();
  Complex2 f_theta_phi = Complex2::Zero();
  Complex2 f_phi_varphi = Complex2::Zero();

  // F_μν for any ordered pair, using antisymmetry.
  Complex2 component(Coord mu, Coord nu) const;
};

GaugeConnection connection_analytic(const ControlPoint& p);

// Central differences of the closed-form dark states; θ ± h must stay in [0, π].
GaugeConnection connection_numeric(const ControlPoint& p, double h = 1e-5);

FieldStrength curvature_analytic(const ControlPoint& p);

// F_μν = ∂_μA_ν − ∂_νA_μ + [A_μ, A_ν] from nested differences of connection_numeric.
FieldStrength curvature_numeric(const ControlPoint& p, double h = 1e-5);

// F_θϕ / sin θ.
Complex2 spherical_field(const FieldStrength& f, double theta, double pole_tolerance = 1e-6);

struct ParamPath {
  std::vector<ControlPoint> waypoints;
  int segments_per_leg = 512;
  bool closed = true;
};

// P exp(−∫A·dμ) along the waypoints, later legs multiplying from the left.
Unitary2 wilson_line(const ParamPath& path);

// I − F·dS
Complex2 small_loop_operator(const Complex2& f, double ds);

// Converts an operator on the dark pair at a θ = 0 point to the (|2⟩,|4⟩)
// basis and back.
Unitary2 to_pseudospin(const Unitary2& dark_op, const ControlPoint& origin);
Unitary2 to_dark_frame(const Unitary2& pseudospin_op, const ControlPoint& origin);

}  // namespace nagf
