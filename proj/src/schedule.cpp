#include "nagf/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "nagf/errors.hpp"

namespace nagf {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::triangle: return "triangle";
    case ScheduleKind::c1: return "c1";
    case ScheduleKind::c2: return "c2";
    case ScheduleKind::square_leg: return "square-leg";
    case ScheduleKind::custom: return "custom";
  }
  return "custom";
}

bool Perturbation::is_identity() const {
  return rabi_scale == 1.0 && detuning_scale == 1.0 && rabi_noise.empty();
}

ParameterSchedule::ParameterSchedule(ScheduleKind kind, double duration, double omega0,
                                     Profile theta, Profile phi_mix, Profile varphi,
                                     std::vector<double> breakpoints)
    : kind_(kind),
      duration_(duration),
      omega0_(omega0),
      theta_(std::move(theta)),
      phi_mix_(std::move(phi_mix)),
      varphi_(std::move(varphi)),
      breakpoints_(std::move(breakpoints)) {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw InvalidInput("schedule duration must be positive");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidInput("omega0 must be positive");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  for (double b : breakpoints_)
    if (!(b > 0.0 && b < duration)) throw InvalidInput("breakpoint outside the schedule interior");
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

ControlPoint ParameterSchedule::point_at(double t) const {
  return {theta_(t), phi_mix_(t), varphi_(t), omega0_};
}

Couplings ParameterSchedule::couplings_at(double t) const { return couplings_at(t, t); }

Couplings ParameterSchedule::couplings_at(double t, double anchor) const {
  Couplings c = couplings(point_at(t));
  if (perturbation_.is_identity()) return c;
  c.rabi *= perturbation_.rabi_scale;
  c.g *= perturbation_.rabi_scale;
  c.detuning *= perturbation_.detuning_scale;
  const auto& noise = perturbation_.rabi_noise;
  if (!noise.empty()) {
    const auto n = static_cast<long>(noise.size());
    long bin = static_cast<long>(std::floor(anchor / duration_ * static_cast<double>(n)));
    bin = std::clamp(bin, 0L, n - 1);
    c.rabi *= noise[static_cast<std::size_t>(bin)];
  }
  return c;
}

ParameterSchedule ParameterSchedule::with_perturbation(Perturbation p) const {
  if (!(p.rabi_scale > 0.0) || !(p.detuning_scale > 0.0))
    throw InvalidInput("coupling scale factors must be positive");
  ParameterSchedule out = *this;
  out.perturbation_ = std::move(p);
  return out;
}

ParameterSchedule concatenate(const std::vector<ParameterSchedule>& pieces) {
  if (pieces.empty()) throw InvalidInput("concatenate needs at least one schedule");
  auto parts = std::make_shared<std::vector<ParameterSchedule>>(pieces);
  auto starts = std::make_shared<std::vector<double>>();
  std::vector<double> breaks;
  double total = 0.0;
  for (const auto& p : pieces) {
    if (!p.perturbation().is_identity()) throw InvalidInput("concatenate expects unperturbed pieces");
    if (p.omega0() != pieces.front().omega0()) throw InvalidInput("concatenated pieces must share omega0");
    if (total > 0.0) breaks.push_back(total);
    for (double b : p.breakpoints()) breaks.push_back(total + b);
    starts->push_back(total);
    total += p.duration();
  }
  auto locate = [parts, starts](double t) -> std::pair<const ParameterSchedule*, double> {
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(starts->begin(), starts->end(), t) - starts->begin());
    i = i == 0 ? 0 : i - 1;
    const ParameterSchedule& s = (*parts)[i];
    return {&s, std::min(t - (*starts)[i], s.duration())};
  };
  auto theta = [locate](double t) { auto [s, u] = locate(t); return s->point_at(u).theta; };
  auto phi = [locate](double t) { auto [s, u] = locate(t); return s->point_at(u).phi_mix; };
  auto varphi = [locate](double t) { auto [s, u] = locate(t); return s->point_at(u).varphi; };
  const ScheduleKind kind = pieces.size() == 1 ? pieces.front().kind() : ScheduleKind::custom;
  ParameterSchedule out(kind, total, pieces.front().omega0(), theta, phi, varphi, breaks);
  return out;
}

ParameterSchedule repeat(const ParameterSchedule& piece, int n) {
  if (n < 1) throw InvalidInput("repeat count must be at least 1");
  if (n == 1) return piece;
  return concatenate(std::vector<ParameterSchedule>(static_cast<std::size_t>(n), piece));
}

double allen_eberly_theta(double t, double period, double theta0, double b, bool clamp) {
  if (!(period > 0.0)) throw InvalidInput("period must be positive");
  if (t < 0.0 || t > period) throw InvalidInput("allen_eberly_theta: t outside [0, T]");
  if (b <= 0.0) b = 10.0 / period;
  auto raw = [&](double s) {
    return s <= period / 2 ? theta0 * (1.0 + std::tanh(b * (s - period / 4))) / 2
                           : theta0 * (1.0 - std::tanh(b * (s - 3 * period / 4))) / 2;
  };
  double th = raw(t);
  if (clamp) {
    const double window = period / 20;
    if (t < window) th -= raw(0.0) * (1.0 - t / window);
    if (period - t < window) th -= raw(period) * (1.0 - (period - t) / window);
  }
  return th;
}

double smooth_ramp(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x - std::sin(2 * pi * x) / (2 * pi);
}

ParameterSchedule triangle_schedule(const TriangleLoop& loop) {
  if (!(loop.period > 0.0)) throw InvalidInput("period must be positive");
  if (loop.ramp_fraction < 0.0 || loop.ramp_fraction > 0.5)
    throw InvalidInput("ramp_fraction must lie in [0, 0.5]");
  const double T = loop.period;
  const double b = loop.steepness > 0.0 ? loop.steepness : 10.0 / T;
  const double th0 = loop.theta0, phi = loop.phi_mix, v0 = loop.varphi0, dv = loop.delta_varphi;
  const double w = loop.ramp_fraction * T;

  auto theta = [=](double t) { return allen_eberly_theta(std::clamp(t, 0.0, T), T, th0, b); };
  auto phi_f = [=](double) { return phi; };
  std::vector<double> breaks;
  ParameterSchedule::Profile varphi;
  if (w == 0.0) {
    varphi = [=](double t) { return t < T / 2 ? v0 : v0 + dv; };
    breaks.push_back(T / 2);
  } else {
    const double t0 = T / 2 - w / 2;
    varphi = [=](double t) { return v0 + dv * smooth_ramp((t - t0) / w); };
  }
  return ParameterSchedule(ScheduleKind::triangle, T, loop.omega0, theta, phi_f, varphi, breaks);
}

double loop_envelope(double t, double period) {
  const double s = std::sin(pi * t / period);
  return s * s;
}

ParameterSchedule c1_schedule(double theta1, double gamma, double omega0, double period) {
  auto theta = [=](double t) { return theta1 * loop_envelope(t, period); };
  auto phi = [=](double t) { return gamma * loop_envelope(t, period); };
  auto varphi = [=](double t) { return 2 * pi * t / period; };
  return ParameterSchedule(ScheduleKind::c1, period, omega0, theta, phi, varphi);
}

ParameterSchedule c2_schedule(double theta2, double gamma, double omega0, double period) {
  auto theta = [=](double t) { return theta2 * loop_envelope(t, period); };
  auto phi = [=](double t) { return gamma * loop_envelope(t, period); };
  auto varphi = [=](double t) { return 2 * pi * loop_envelope(t, period) * t / period; };
  return ParameterSchedule(ScheduleKind::c2, period, omega0, theta, phi, varphi);
}

ParameterSchedule constant_schedule(const ControlPoint& p, double duration) {
  p.validate();
  auto th = [p](double) { return p.theta; };
  auto ph = [p](double) { return p.phi_mix; };
  auto v = [p](double) { return p.varphi; };
  return ParameterSchedule(ScheduleKind::custom, duration, p.omega0, th, ph, v);
}

}  // namespace nagf
