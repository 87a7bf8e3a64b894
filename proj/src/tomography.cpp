#include "nagf/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nagf/atom_system.hpp"
#include "nagf/errors.hpp"
#include "nagf/random.hpp"

namespace nagf {

std::string to_string(InputState s) {
  switch (s) {
    case InputState::two: return "2";
    case InputState::four: return "4";
    case InputState::plus: return "+";
  }
  return "?";
}

std::string to_string(MeasurementBasis b) {
  switch (b) {
    case MeasurementBasis::x: return "x";
    case MeasurementBasis::y: return "y";
    case MeasurementBasis::z: return "z";
  }
  return "?";
}

State2 input_vector(InputState s) {
  switch (s) {
    case InputState::two: return {1.0, 0.0};
    case InputState::four: return {0.0, 1.0};
    case InputState::plus: return State2(1.0, 1.0) / std::sqrt(2.0);
  }
  return {1.0, 0.0};
}

namespace {

Complex2 from_columns(cplx a, cplx b) {
  Complex2 m;
  m << a, -std::conj(b), b, std::conj(a);
  return m;
}

// Bloch vector of the |2⟩ column implied by one record.
bool first_column_bloch(const TomographyRecord& r, Vec3& out) {
  if (r.input == InputState::two) out = r.expectation;
  else if (r.input == InputState::four) out = -r.expectation;
  else return false;
  return true;
}

double misfit(const Complex2& u, const Vec3& target) {
  const Vec3 n = bloch_vector(u * input_vector(InputState::plus));
  return (n - target).squaredNorm();
}

}  // namespace

Reconstruction reconstruct_unitary(const std::vector<TomographyRecord>& records, double bloch_tolerance) {
  Vec3 sum = Vec3::Zero();
  int count = 0;
  const TomographyRecord* plus = nullptr;
  for (const auto& r : records) {
    if (r.expectation.norm() > 1.0 + bloch_tolerance + 5.0 * r.standard_error.norm())
      throw InvalidInput("reconstruct_unitary: Bloch vector longer than 1");
    Vec3 n;
    if (first_column_bloch(r, n)) {
      sum += n;
      ++count;
    } else {
      plus = &r;
    }
  }
  if (count == 0) throw InvalidInput("reconstruct_unitary: needs a |2> or |4> record");

  Reconstruction out;
  Vec3 n = sum / count;
  const double len = n.norm();
  if (len < 1e-12) throw InvalidInput("reconstruct_unitary: Bloch vector vanishes");
  n /= len;
  const double abs_a = std::sqrt(std::max(0.0, (1.0 + n.z()) / 2));
  const double abs_b = std::sqrt(std::max(0.0, (1.0 - n.z()) / 2));
  const double transverse = std::hypot(n.x(), n.y());
  out.phase_indeterminate = transverse < 1e-12;
  const double rel = out.phase_indeterminate ? 0.0 : std::atan2(n.y(), n.x());
  Complex2 u = from_columns(abs_a, std::polar(abs_b, rel));

  if (plus != nullptr) {
    // Right z-phase: U diag(e^{iχ}, e^{−iχ}).
    auto trial = [&](double chi) {
      Complex2 d = Complex2::Zero();
      d(0, 0) = std::polar(1.0, chi);
      d(1, 1) = std::polar(1.0, -chi);
      return Complex2(u * d);
    };
    constexpr int grid = 720;
    double best = 0.0, best_cost = misfit(u, plus->expectation);
    for (int i = 1; i < grid; ++i) {
      const double chi = -pi + 2 * pi * i / grid;
      const double c = misfit(trial(chi), plus->expectation);
      if (c < best_cost) best_cost = c, best = chi;
    }
    double lo = best - 2 * pi / grid, hi = best + 2 * pi / grid;
    const double g = (std::sqrt(5.0) - 1) / 2;
    while (hi - lo > 1e-12) {
      const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      if (misfit(trial(x1), plus->expectation) < misfit(trial(x2), plus->expectation)) hi = x2;
      else lo = x1;
    }
    u = trial(0.5 * (lo + hi));
    out.column_phase_fixed = true;
  }
  // Records cannot tell U from −U; keep the smaller rotation angle.
  Unitary2 v = unitarize(u);
  if (v.matrix().trace().real() < 0.0) v = Unitary2::from_trusted(-v.matrix());
  out.unitary = v;
  return out;
}

Unitary2 holonomic_tomo_pulse(double theta_nd, double varphi_nd) {
  const double c = std::cos(theta_nd), s = std::sin(theta_nd);
  Complex2 m;
  m << c, s * std::polar(1.0, -varphi_nd), s * std::polar(1.0, varphi_nd), -c;
  return Unitary2::from_trusted(m);
}

Unitary2 measurement_rotation(MeasurementBasis b) {
  switch (b) {
    case MeasurementBasis::x: return holonomic_tomo_pulse(pi / 4, 0.0);
    case MeasurementBasis::y: return holonomic_tomo_pulse(pi / 4, pi / 2);
    case MeasurementBasis::z: return Unitary2::identity();
  }
  return Unitary2::identity();
}

MeasurementEstimate simulate_measurement(const State4& psi, MeasurementBasis basis, int shots,
                                         std::uint64_t seed) {
  if (shots < 1) throw InvalidInput("simulate_measurement: shots must be at least 1");
  State2 s = pseudospin_part(psi);
  const double n = s.norm();
  if (n < 1e-12) throw InvalidInput("simulate_measurement: no population in the pseudospin pair");
  s /= n;
  const State2 rotated = measurement_rotation(basis).matrix() * s;
  const double p_up = std::clamp(std::norm(rotated(0)), 0.0, 1.0);

  std::mt19937_64 rng(seed);
  std::binomial_distribution<long long> draw(shots, p_up);
  const double p_hat = static_cast<double>(draw(rng)) / shots;
  return {2 * p_hat - 1, 2 * std::sqrt(p_hat * (1 - p_hat) / shots), shots};
}

TomographyRecord measure_record(const State4& psi, InputState input, int shots, std::uint64_t seed) {
  TomographyRecord r;
  r.input = input;
  r.shots = shots;
  r.seed = seed;
  const MeasurementBasis bases[] = {MeasurementBasis::x, MeasurementBasis::y, MeasurementBasis::z};
  for (int i = 0; i < 3; ++i) {
    const MeasurementEstimate e = simulate_measurement(psi, bases[i], shots, derive_seed(seed, i));
    r.expectation(i) = e.expectation;
    r.standard_error(i) = e.standard_error;
  }
  return r;
}

TomographyRecord exact_record(const Unitary2& u, InputState input) {
  TomographyRecord r;
  r.input = input;
  r.expectation = bloch_vector(u.matrix() * input_vector(input));
  return r;
}

}  // namespace nagf
