#pragma once

#include <Eigen/Dense>
#include <complex>

namespace nagf {

using cplx = std::complex<double>;
using Complex2 = Eigen::Matrix2cd;
using Complex4 = Eigen::Matrix4cd;
using State2 = Eigen::Vector2cd;
using State4 = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I_unit{0.0, 1.0};

struct Tolerances {
  double unitarity = 1e-10;        // ‖UU† − I‖_F accepted as unitary
  double special_unitary = 1e-8;   // |det − 1| after phase stripping
  double root_recompose = 1e-9;
  double axis_norm = 1e-12;
  double normalization = 1e-9;     // state vectors
  double branch_margin = 1e-6;     // η this close to π is flagged
  double singular = 1e-14;
};

namespace pauli {
Complex2 identity();
Complex2 x();
Complex2 y();
Complex2 z();
// n·σ
Complex2 dot(const Vec3& n);
// Coefficients (c0, c) with M = c0 I + c·σ.
void decompose(const Complex2& m, cplx& c0, Eigen::Vector3cd& c);
}  // namespace pauli

class Unitary2 {
 public:
  Unitary2();
  explicit Unitary2(const Complex2& m, const Tolerances& tol = {});

  // Skips the unitarity check; for matrices unitary by construction.
  static Unitary2 from_trusted(const Complex2& m);
  static Unitary2 identity();

  const Complex2& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }
  Unitary2 adjoint() const;
  cplx det() const { return m_.determinant(); }
  Unitary2 pow(int n) const;
  double unitarity_defect() const;

  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
    return from_trusted(a.m_ * b.m_);
  }

 private:
  Complex2 m_;
};

double unitarity_defect(const Complex2& m);

// U = cos η I + i sin η (ĥ·σ),  ĥ = (sin χ cos ξ, sin χ sin ξ, cos χ).
struct RotationAxisForm {
  double eta = 0.0;
  Vec3 axis = Vec3::UnitZ();
  bool axis_ambiguous = false;

  double chi() const;
  double xi() const;
};

Unitary2 su2_exp(const RotationAxisForm& form, const Tolerances& tol = {});
Unitary2 su2_exp(double eta, const Vec3& axis, const Tolerances& tol = {});

// Divides by the principal square root of the determinant.
Complex2 strip_global_phase(const Complex2& m);

RotationAxisForm su2_log(const Complex2& u, const Tolerances& tol = {});
inline RotationAxisForm su2_log(const Unitary2& u, const Tolerances& tol = {}) {
  return su2_log(u.matrix(), tol);
}

struct RootResult {
  Unitary2 root;
  RotationAxisForm principal;  // of the SU(2) part of the input
  bool near_branch_cut = false;
};

// Principal-branch N-th root. Any global phase of the input is rooted too,
// so root^N reproduces the input itself.
RootResult nth_root_su2(const Unitary2& u, int n, const Tolerances& tol = {});

// Polar factor of m (nearest unitary in Frobenius norm).
Unitary2 unitarize(const Complex2& m, const Tolerances& tol = {});

// Exponential of a general 2×2 complex matrix.
Complex2 expm2(const Complex2& x);

double fidelity(const State2& act, const State2& ideal, const Tolerances& tol = {});
double fidelity(const State4& act, const State4& ideal, const Tolerances& tol = {});

// |tr(a†b)|/2, insensitive to a relative global phase.
double gate_fidelity(const Unitary2& a, const Unitary2& b);

// (⟨σx⟩, ⟨σy⟩, ⟨σz⟩) of a normalized two-component state.
Vec3 bloch_vector(const State2& psi);

}  // namespace nagf
