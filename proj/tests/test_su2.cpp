#include <doctest.h>

#include "nagf/errors.hpp"
#include "nagf/su2.hpp"
#include "oracles.hpp"

using namespace nagf;

TEST_CASE("exp at zero angle is the identity") {
  for (const Vec3& axis : {Vec3(1, 0, 0), Vec3(0, 0.6, 0.8)}) {
    const Unitary2 u = su2_exp(0.0, axis);
    CHECK((u.matrix() - Complex2::Identity()).norm() < 1e-15);
  }
}

TEST_CASE("exp of a quarter turn about z") {
  const Unitary2 u = su2_exp(pi / 2, Vec3(0, 0, 1));
  Complex2 expect;
  expect << I_unit, 0, 0, -I_unit;
  CHECK((u.matrix() - expect).norm() < 1e-15);
}

TEST_CASE("exp agrees with the exponential series") {
  const Complex2 gen = cplx(0, 0.3) * oracle::sx();
  CHECK((su2_exp(0.3, Vec3(1, 0, 0)).matrix() - oracle::expm_series(gen)).norm() < 1e-12);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  for (int i = 0; i < 20; ++i) {
    Vec3 a(n(rng), n(rng), n(rng));
    a.normalize();
    const double eta = 3.0 * std::abs(n(rng));
    const Complex2 g = cplx(0, eta) * (a.x() * oracle::sx() + a.y() * oracle::sy() + a.z() * oracle::sz());
    CHECK((su2_exp(eta, a).matrix() - oracle::expm_series(g)).norm() < 1e-12);
    CHECK(std::abs(su2_exp(eta, a).det() - 1.0) < 1e-12);
  }
}

TEST_CASE("exp rejects a non-unit axis") {
  CHECK_THROWS_AS(su2_exp(0.1, Vec3(1, 1, 0)), InvalidInput);
  CHECK_THROWS_AS(su2_exp(0.1, Vec3(0, 0, 0)), InvalidInput);
}

TEST_CASE("log of trivial elements") {
  const RotationAxisForm id = su2_log(Unitary2::identity());
  CHECK(id.eta == doctest::Approx(0.0));
  CHECK(id.axis_ambiguous);

  Complex2 d;
  d << I_unit, 0, 0, -I_unit;
  const RotationAxisForm f = su2_log(d);
  CHECK(f.eta == doctest::Approx(pi / 2));
  CHECK((f.axis - Vec3(0, 0, 1)).norm() < 1e-12);
  CHECK_FALSE(f.axis_ambiguous);

  const RotationAxisForm m = su2_log(Complex2(-Complex2::Identity()));
  CHECK(m.eta == doctest::Approx(pi));
  CHECK(m.axis_ambiguous);
}

TEST_CASE("exp-log round trip on random elements") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Complex2 u = oracle::random_su2(rng);
    const RotationAxisForm f = su2_log(u);
    CHECK(f.eta >= 0.0);
    CHECK(f.eta <= pi);
    CHECK((su2_exp(f).matrix() - u).norm() < 1e-10);
  }
}

TEST_CASE("log inverts exp inside the open branch") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, pi - 0.01);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100; ++i) {
    Vec3 a(n(rng), n(rng), n(rng));
    a.normalize();
    const double eta = u(rng);
    const RotationAxisForm f = su2_log(su2_exp(eta, a));
    CHECK(f.eta == doctest::Approx(eta).epsilon(1e-10));
    CHECK((f.axis - a).norm() < 1e-9);
  }
}

TEST_CASE("log ignores a global phase") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Complex2 u = oracle::random_su2_bounded(rng, 2.5);
    const Complex2 v = std::exp(cplx(0, 0.37 * i)) * u;
    const RotationAxisForm a = su2_log(u), b = su2_log(v);
    // −U has angle π − η and flipped axis; both describe the same element.
    const Complex2 ua = su2_exp(a).matrix(), ub = su2_exp(b).matrix();
    CHECK(std::min((ua - ub).norm(), (ua + ub).norm()) < 1e-10);
  }
}

TEST_CASE("log rejects a non-unitary matrix") {
  Complex2 m = Complex2::Identity();
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(su2_log(m), UnitarityError);
}

TEST_CASE("N-th root of trivial inputs") {
  CHECK((nth_root_su2(Unitary2::identity(), 7).root.matrix() - Complex2::Identity()).norm() < 1e-15);
  std::mt19937_64 rng(1);
  const Unitary2 u(oracle::random_su2_bounded(rng, 2.0));
  CHECK((nth_root_su2(u, 1).root.matrix() - u.matrix()).norm() < 1e-12);
  CHECK_THROWS_AS(nth_root_su2(u, 0), InvalidInput);
  CHECK_THROWS_AS(nth_root_su2(u, -2), InvalidInput);
}

TEST_CASE("fifth root divides the angle") {
  const Vec3 h = Vec3(1, 2, 2) / 3.0;
  const RootResult r = nth_root_su2(su2_exp(0.30, h), 5);
  CHECK((r.root.matrix() - su2_exp(0.06, h).matrix()).norm() < 1e-12);
  CHECK(r.principal.eta == doctest::Approx(0.30));
}

TEST_CASE("roots recompose and match the eigendecomposition root") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Complex2 u = oracle::random_su2_bounded(rng, 0.9 * pi);
    const int n = 1 + i % 7;
    const RootResult r = nth_root_su2(Unitary2(u), n);
    CHECK((r.root.pow(n).matrix() - u).norm() < 1e-9);
    CHECK((r.root.matrix() - oracle::principal_root(u, n)).norm() < 1e-9);
  }
}

TEST_CASE("roots keep a global phase") {
  std::mt19937_64 rng(19);
  const Complex2 u = std::exp(cplx(0, 0.8)) * oracle::random_su2_bounded(rng, 1.0);
  CHECK((nth_root_su2(Unitary2(u), 4).root.pow(4).matrix() - u).norm() < 1e-9);
}

TEST_CASE("roots flag the branch cut") {
  const RootResult r = nth_root_su2(su2_exp(pi - 1e-8, Vec3(0, 1, 0)), 3);
  CHECK(r.near_branch_cut);
  CHECK_FALSE(nth_root_su2(su2_exp(1.0, Vec3(0, 1, 0)), 3).near_branch_cut);
}

TEST_CASE("unitarize") {
  std::mt19937_64 rng(23);
  const Complex2 u = oracle::random_su2(rng);
  CHECK((unitarize(u).matrix() - u).norm() < 1e-12);
  CHECK((unitarize(1.01 * Complex2::Identity()).matrix() - Complex2::Identity()).norm() < 1e-12);

  std::normal_distribution<double> n;
  for (int i = 0; i < 50; ++i) {
    const Complex2 w = oracle::random_su2(rng);
    Complex2 e;
    e << cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng));
    const Complex2 m = w + 1e-3 * e;
    const Unitary2 p = unitarize(m);
    CHECK((p.matrix() - oracle::polar_svd(m)).norm() < 1e-12);
    CHECK((p.matrix() - w).norm() < 1e-2);
    CHECK(p.unitarity_defect() < 1e-12);
    CHECK((unitarize(p.matrix()).matrix() - p.matrix()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(unitarize(Complex2::Zero()), InvalidInput);
}

TEST_CASE("Unitary2 constructor checks unitarity") {
  Complex2 m = Complex2::Identity();
  m(0, 0) = 1.1;
  CHECK_THROWS_AS(Unitary2{m}, UnitarityError);
  CHECK_NOTHROW(Unitary2{Complex2(oracle::sx())});
}

TEST_CASE("expm2 agrees with the series for general matrices") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> n;
  for (int i = 0; i < 30; ++i) {
    Complex2 x;
    x << cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng));
    const Complex2 a = expm2(x), b = oracle::expm_series(x);
    CHECK((a - b).norm() < 1e-11 * std::max(1.0, b.norm()));
  }
  CHECK((expm2(Complex2::Zero()) - Complex2::Identity()).norm() < 1e-15);
}

TEST_CASE("state fidelity") {
  const State2 two(1, 0), four(0, 1);
  const State2 plus = State2(1, 1) / std::sqrt(2.0);
  CHECK(fidelity(two, two) == doctest::Approx(1.0));
  CHECK(fidelity(two, four) == doctest::Approx(0.0));
  CHECK(fidelity(two, plus) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK_THROWS_AS(fidelity(State2(1, 1), two), InvalidInput);
  CHECK(fidelity(State4(0, 1, 0, 0), State4(0, 0, 0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("gate fidelity ignores global phase") {
  std::mt19937_64 rng(31);
  const Complex2 u = oracle::random_su2(rng);
  CHECK(gate_fidelity(Unitary2(u), Unitary2(Complex2(std::exp(cplx(0, 1.3)) * u))) == doctest::Approx(1.0));
  CHECK(gate_fidelity(Unitary2::identity(), Unitary2(Complex2(oracle::sx()))) == doctest::Approx(0.0));
}

TEST_CASE("Bloch vector") {
  CHECK((bloch_vector(State2(1, 0)) - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK((bloch_vector(State2(1, 1) / std::sqrt(2.0)) - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((bloch_vector(State2(1, I_unit) / std::sqrt(2.0)) - Vec3(0, 1, 0)).norm() < 1e-15);
}

TEST_CASE("Pauli decomposition") {
  std::mt19937_64 rng(37);
  const Complex2 u = oracle::random_su2(rng);
  cplx c0;
  Eigen::Vector3cd c;
  pauli::decompose(u, c0, c);
  const Complex2 back = c0 * Complex2::Identity() + c(0) * oracle::sx() + c(1) * oracle::sy() + c(2) * oracle::sz();
  CHECK((back - u).norm() < 1e-14);
}
