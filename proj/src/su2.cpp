#include "nagf/su2.hpp"

#include <algorithm>
#include <cmath>

#include "nagf/errors.hpp"

namespace nagf {

namespace pauli {

Complex2 identity() { return Complex2::Identity(); }

Complex2 x() {
  Complex2 m;
  m << 0, 1, 1, 0;
  return m;
}

Complex2 y() {
  Complex2 m;
  m << 0, -I_unit, I_unit, 0;
  return m;
}

Complex2 z() {
  Complex2 m;
  m << 1, 0, 0, -1;
  return m;
}

Complex2 dot(const Vec3& n) { return n.x() * x() + n.y() * y() + n.z() * z(); }

void decompose(const Complex2& m, cplx& c0, Eigen::Vector3cd& c) {
  c0 = 0.5 * (m(0, 0) + m(1, 1));
  c(0) = 0.5 * (m(0, 1) + m(1, 0));
  c(1) = 0.5 * I_unit * (m(0, 1) - m(1, 0));
  c(2) = 0.5 * (m(0, 0) - m(1, 1));
}

}  // namespace pauli

double unitarity_defect(const Complex2& m) {
  return (m * m.adjoint() - Complex2::Identity()).norm();
}

Unitary2::Unitary2() : m_(Complex2::Identity()) {}

Unitary2::Unitary2(const Complex2& m, const Tolerances& tol) : m_(m) {
  if (!m.allFinite()) throw InvalidInput("matrix has non-finite entries");
  const double d = nagf::unitarity_defect(m);
  if (d > tol.unitarity)
    throw UnitarityError("matrix is not unitary (defect " + std::to_string(d) + ")");
}

Unitary2 Unitary2::from_trusted(const Complex2& m) {
  Unitary2 u;
  u.m_ = m;
  return u;
}

Unitary2 Unitary2::identity() { return Unitary2(); }

Unitary2 Unitary2::adjoint() const { return from_trusted(m_.adjoint()); }

Unitary2 Unitary2::pow(int n) const {
  if (n < 0) return adjoint().pow(-n);
  Complex2 acc = Complex2::Identity();
  Complex2 base = m_;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return from_trusted(acc);
}

double Unitary2::unitarity_defect() const { return nagf::unitarity_defect(m_); }

double RotationAxisForm::chi() const { return std::acos(std::clamp(axis.z(), -1.0, 1.0)); }

double RotationAxisForm::xi() const { return std::atan2(axis.y(), axis.x()); }

Unitary2 su2_exp(double eta, const Vec3& axis, const Tolerances& tol) {
  if (std::abs(axis.norm() - 1.0) > tol.axis_norm)
    throw InvalidInput("rotation axis is not a unit vector");
  Complex2 m = std::cos(eta) * Complex2::Identity() + I_unit * std::sin(eta) * pauli::dot(axis);
  return Unitary2::from_trusted(m);
}

Unitary2 su2_exp(const RotationAxisForm& form, const Tolerances& tol) {
  return su2_exp(form.eta, form.axis, tol);
}

Complex2 strip_global_phase(const Complex2& m) { return m / std::sqrt(m.determinant()); }

RotationAxisForm su2_log(const Complex2& u, const Tolerances& tol) {
  if (unitarity_defect(u) > tol.unitarity) throw UnitarityError("su2_log: input is not unitary");
  const Complex2 s = strip_global_phase(u);
  if (std::abs(s.determinant() - 1.0) > tol.special_unitary)
    throw UnitarityError("su2_log: determinant not unit after phase stripping");

  // s = cos η I + i sin η ĥ·σ, so the Pauli coefficients of s are i sin η ĥ.
  cplx c0;
  Eigen::Vector3cd c;
  pauli::decompose(s, c0, c);
  Vec3 v = (c / I_unit).real();
  const double sin_eta = v.norm();
  RotationAxisForm out;
  out.eta = std::atan2(sin_eta, c0.real());
  if (sin_eta < 1e-14) {
    out.axis = Vec3::UnitZ();
    out.axis_ambiguous = true;
  } else {
    out.axis = v / sin_eta;
    out.axis_ambiguous = (pi - out.eta) < tol.branch_margin;
  }
  return out;
}

RootResult nth_root_su2(const Unitary2& u, int n, const Tolerances& tol) {
  if (n <= 0) throw InvalidInput("nth_root_su2: N must be positive");
  const cplx sqrt_det = std::sqrt(u.det());
  RootResult out{Unitary2(), su2_log(u.matrix(), tol), false};
  out.near_branch_cut = (pi - out.principal.eta) < tol.branch_margin;
  const cplx phase = std::polar(1.0, std::arg(sqrt_det) / n);
  const Unitary2 r = su2_exp(out.principal.eta / n, out.principal.axis);
  out.root = Unitary2::from_trusted(phase * r.matrix());
  return out;
}

Unitary2 unitarize(const Complex2& m, const Tolerances& tol) {
  if (!m.allFinite()) throw InvalidInput("unitarize: non-finite input");
  const double scale = m.squaredNorm();
  if (scale == 0.0 || std::abs(m.determinant()) < tol.singular * scale)
    throw InvalidInput("unitarize: matrix is singular");
  // Newton iteration for the polar factor, X ← (X + X^{-†})/2.
  Complex2 x = m;
  for (int k = 0; k < 100; ++k) {
    const Complex2 next = 0.5 * (x + x.inverse().adjoint());
    const double step = (next - x).norm();
    x = next;
    if (step < 1e-15) break;
  }
  return Unitary2::from_trusted(x);
}

Complex2 expm2(const Complex2& x) {
  // x = t I + Y with Y traceless, Y² = −det(Y) I.
  const cplx t = 0.5 * x.trace();
  const Complex2 y = x - t * Complex2::Identity();
  const cplx d = -y.determinant();
  const cplx s = std::sqrt(d);
  cplx ch, sh_over_s;
  if (std::abs(s) < 1e-6) {
    ch = 1.0 + d / 2.0 + d * d / 24.0;
    sh_over_s = 1.0 + d / 6.0 + d * d / 120.0;
  } else {
    ch = std::cosh(s);
    sh_over_s = std::sinh(s) / s;
  }
  return std::exp(t) * (ch * Complex2::Identity() + sh_over_s * y);
}

namespace {

template <class V>
double fidelity_impl(const V& a, const V& b, const Tolerances& tol) {
  if (std::abs(a.norm() - 1.0) > tol.normalization || std::abs(b.norm() - 1.0) > tol.normalization)
    throw InvalidInput("fidelity: states must be normalized");
  return std::min(1.0, std::abs(a.dot(b)));
}

}  // namespace

double fidelity(const State2& act, const State2& ideal, const Tolerances& tol) {
  return fidelity_impl(act, ideal, tol);
}

double fidelity(const State4& act, const State4& ideal, const Tolerances& tol) {
  return fidelity_impl(act, ideal, tol);
}

double gate_fidelity(const Unitary2& a, const Unitary2& b) {
  return std::min(1.0, std::abs((a.matrix().adjoint() * b.matrix()).trace()) / 2.0);
}

Vec3 bloch_vector(const State2& psi) {
  const cplx c = std::conj(psi(0)) * psi(1);
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(psi(0)) - std::norm(psi(1))};
}

}  // namespace nagf
