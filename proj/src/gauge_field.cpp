#include "nagf/gauge_field.hpp"

#include <cmath>

#include "nagf/errors.hpp"

namespace nagf {

const Complex2& GaugeConnection::operator[](Coord mu) const {
  switch (mu) {
    case Coord::theta: return a_theta;
    case Coord::phi_mix: return a_phi;
    case Coord::varphi: return a_varphi;
  }
  return a_theta;
}

Complex2 FieldStrength::component(Coord mu, Coord nu) const {
  auto idx = [](Coord c) { return static_cast<int>(c); };
  if (mu == nu) return Complex2::Zero();
  const int a = idx(mu), b = idx(nu);
  const int lo = std::min(a, b), hi = std::max(a, b);
  Complex2 f;
  if (lo == 0 && hi == 2) f = f_theta_varphi;
  else if (lo == 0 && hi == 1) f = f_theta_phi;
  else f = f_phi_varphi;
  return a < b ? f : Complex2(-f);
}

GaugeConnection connection_analytic(const ControlPoint& p) {
  const double c2 = std::pow(std::cos(p.theta / 2), 2);
  const double cf = std::cos(p.phi_mix), sf = std::sin(p.phi_mix);
  const double cv = std::cos(p.varphi), sv = std::sin(p.varphi);
  GaugeConnection a;
  a.a_phi = I_unit * c2 * pauli::dot(Vec3(-sv, cv, 0.0));
  a.a_varphi = I_unit * c2 * cf * pauli::dot(Vec3(sf * cv, sf * sv, cf));
  return a;
}

namespace {

void check_interior(const ControlPoint& p, double h) {
  p.validate();
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  if (p.theta - h < 0.0 || p.theta + h > pi)
    throw InvalidInput("point too close to a chart pole for finite differences");
}

ControlPoint shifted(ControlPoint p, Coord mu, double d) {
  switch (mu) {
    case Coord::theta: p.theta += d; break;
    case Coord::phi_mix: p.phi_mix += d; break;
    case Coord::varphi: p.varphi += d; break;
  }
  return p;
}

Complex2 overlap_derivative(const ControlPoint& p, Coord mu, double h) {
  const auto d0 = dark_states(p.theta, p.phi_mix, p.varphi);
  const ControlPoint pp = shifted(p, mu, h), pm = shifted(p, mu, -h);
  const auto dp = dark_states(pp.theta, pp.phi_mix, pp.varphi);
  const auto dm = dark_states(pm.theta, pm.phi_mix, pm.varphi);
  Complex2 a;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) a(j, k) = d0[j].dot(dp[k] - dm[k]) / (2 * h);
  return a;
}

}  // namespace

GaugeConnection connection_numeric(const ControlPoint& p, double h) {
  check_interior(p, h);
  return {overlap_derivative(p, Coord::theta, h), overlap_derivative(p, Coord::phi_mix, h),
          overlap_derivative(p, Coord::varphi, h)};
}

FieldStrength curvature_analytic(const ControlPoint& p) {
  const double st = std::sin(p.theta);
  const double c2 = std::pow(std::cos(p.theta / 2), 2), s2 = 1.0 - c2;
  const double cf = std::cos(p.phi_mix), sf = std::sin(p.phi_mix);
  const double cv = std::cos(p.varphi), sv = std::sin(p.varphi);
  FieldStrength f;
  f.f_theta_varphi = -I_unit * (st * cf / 2) * pauli::dot(Vec3(sf * cv, sf * sv, cf));
  f.f_theta_phi = I_unit * (st / 2) * pauli::dot(Vec3(sv, -cv, 0.0));
  f.f_phi_varphi = 2.0 * I_unit * c2 * s2 * cf * pauli::dot(Vec3(cf * cv, cf * sv, -sf));
  return f;
}

FieldStrength curvature_numeric(const ControlPoint& p, double h) {
  check_interior(p, 2 * h);
  const GaugeConnection a = connection_numeric(p, h);
  auto deriv = [&](Coord mu, Coord nu) {
    const GaugeConnection ap = connection_numeric(shifted(p, mu, h), h);
    const GaugeConnection am = connection_numeric(shifted(p, mu, -h), h);
    return Complex2((ap[nu] - am[nu]) / (2 * h));
  };
  auto field = [&](Coord mu, Coord nu) {
    return Complex2(deriv(mu, nu) - deriv(nu, mu) + a[mu] * a[nu] - a[nu] * a[mu]);
  };
  FieldStrength f;
  f.f_theta_varphi = field(Coord::theta, Coord::varphi);
  f.f_theta_phi = field(Coord::theta, Coord::phi_mix);
  f.f_phi_varphi = field(Coord::phi_mix, Coord::varphi);
  return f;
}

Complex2 spherical_field(const FieldStrength& f, double theta, double pole_tolerance) {
  const double st = std::sin(theta);
  if (std::abs(st) <= pole_tolerance) throw PoleError("spherical field undefined at a pole");
  return f.f_theta_varphi / st;
}

namespace {

bool same_point(const ControlPoint& a, const ControlPoint& b, double tol = 1e-12) {
  return std::abs(a.theta - b.theta) <= tol && std::abs(a.phi_mix - b.phi_mix) <= tol &&
         std::abs(a.varphi - b.varphi) <= tol;
}

// Pure ϕ leg: A_ϕ(ϕa + s) = R(s) A_ϕ(ϕa) R(s)†, R(s) = exp(−i s σz / 2).
Complex2 varphi_leg(const ControlPoint& a, double delta) {
  const Complex2 a0 = connection_analytic(a).a_varphi;
  const Complex2 gen = (0.5 * I_unit * pauli::z() - a0) * delta;
  Complex2 r = Complex2::Zero();
  r(0, 0) = std::polar(1.0, -delta / 2);
  r(1, 1) = std::polar(1.0, delta / 2);
  return r * expm2(gen);
}

}  // namespace

Unitary2 wilson_line(const ParamPath& path) {
  if (path.waypoints.size() < 2) throw InvalidInput("path needs at least two waypoints");
  if (path.segments_per_leg < 100) throw InvalidInput("wilson_line needs at least 100 segments per leg");
  if (path.closed && !same_point(path.waypoints.front(), path.waypoints.back()))
    throw InvalidInput("path marked closed but endpoints differ");

  Complex2 u = Complex2::Identity();
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    const ControlPoint& a = path.waypoints[i];
    const ControlPoint& b = path.waypoints[i + 1];
    const double dth = b.theta - a.theta, dph = b.phi_mix - a.phi_mix, dv = b.varphi - a.varphi;
    if (dph == 0.0 && dv == 0.0) continue;  // A_θ vanishes
    if (dth == 0.0 && dph == 0.0) {
      u = varphi_leg(a, dv) * u;
      continue;
    }
    const int n = path.segments_per_leg;
    for (int k = 0; k < n; ++k) {
      const double f = (k + 0.5) / n;
      ControlPoint m = a;
      m.theta += f * dth;
      m.phi_mix += f * dph;
      m.varphi += f * dv;
      const GaugeConnection c = connection_analytic(m);
      const Complex2 x = -(c.a_phi * dph + c.a_varphi * dv) / static_cast<double>(n);
      u = expm2(x) * u;
    }
  }
  return Unitary2::from_trusted(u);
}

Complex2 small_loop_operator(const Complex2& f, double ds) {
  return Complex2::Identity() - f * ds;
}

Unitary2 to_pseudospin(const Unitary2& dark_op, const ControlPoint& origin) {
  const Unitary2 r = dark_frame_at_origin(origin);
  return r * dark_op * r.adjoint();
}

Unitary2 to_dark_frame(const Unitary2& pseudospin_op, const ControlPoint& origin) {
  const Unitary2 r = dark_frame_at_origin(origin);
  return r.adjoint() * pseudospin_op * r;
}

}  // namespace nagf
