#include "nagf/atom_system.hpp"

#include <cmath>

#include "nagf/errors.hpp"

namespace nagf {

void ControlPoint::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidInput("omega0 must be positive");
  if (!std::isfinite(theta) || !std::isfinite(phi_mix) || !std::isfinite(varphi))
    throw InvalidInput("control point has non-finite angles");
}

double Couplings::magnitude() const { return std::sqrt(rabi * rabi + g * g + detuning * detuning); }

Couplings couplings(const ControlPoint& p) {
  p.validate();
  const double st = std::sin(p.theta);
  return {p.omega0 * st * std::cos(p.phi_mix), p.omega0 * st * std::sin(p.phi_mix),
          p.omega0 * std::cos(p.theta), p.varphi};
}

Complex4 hamiltonian(const Couplings& c) {
  const cplx e = std::polar(1.0, c.varphi);
  const cplx om = c.rabi;
  const double g = c.g, d = c.detuning;
  Complex4 h;
  h << d, om * std::conj(e), 0.0, -g,
       om * e, -d, -g, 0.0,
       0.0, -g, d, -om * e,
       -g, 0.0, -om * std::conj(e), -d;
  return 0.5 * h;
}

Complex4 build_hamiltonian(const ControlPoint& p) { return hamiltonian(couplings(p)); }

std::array<State4, 2> dark_states(double theta, double phi_mix, double varphi) {
  const double s = std::sin(theta / 2), c = std::cos(theta / 2);
  const double cf = std::cos(phi_mix), sf = std::sin(phi_mix);
  const cplx e = std::polar(1.0, varphi);
  State4 d1, d2;
  d1 << s, -c * cf * e, 0.0, c * sf;
  d2 << 0.0, -c * sf, -s, -c * cf * std::conj(e);
  return {d1, d2};
}

EigenSystem eigensystem(const ControlPoint& p) {
  p.validate();
  const double s = std::sin(p.theta / 2), c = std::cos(p.theta / 2);
  const double cf = std::cos(p.phi_mix), sf = std::sin(p.phi_mix);
  const cplx e = std::polar(1.0, p.varphi);
  EigenSystem es;
  es.dark = dark_states(p.theta, p.phi_mix, p.varphi);
  es.bright[0] << -c * cf * std::conj(e), -s, c * sf, 0.0;
  es.bright[1] << -c * sf, 0.0, -c * cf * e, s;
  es.lower_eigenvalue = -0.5 * p.omega0;
  es.upper_eigenvalue = 0.5 * p.omega0;
  return es;
}

Unitary2 dark_frame_at_origin(const ControlPoint& p) {
  if (std::abs(p.theta) > 1e-12)
    throw InvalidInput("dark_frame_at_origin requires theta = 0");
  const auto d = dark_states(0.0, p.phi_mix, p.varphi);
  Complex2 r;
  r << d[0](1), d[1](1),
       d[0](3), d[1](3);
  return Unitary2::from_trusted(r);
}

State4 basis_state(int level) {
  if (level < 1 || level > 4) throw InvalidInput("basis level must be 1..4");
  State4 v = State4::Zero();
  v(level - 1) = 1.0;
  return v;
}

State2 pseudospin_part(const State4& psi) { return {psi(1), psi(3)}; }

State4 embed_pseudospin(const State2& s) {
  State4 v = State4::Zero();
  v(1) = s(0);
  v(3) = s(1);
  return v;
}

}  // namespace nagf
