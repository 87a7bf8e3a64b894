#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nagf/atom_system.hpp"

namespace nagf {

enum class ScheduleKind { triangle, c1, c2, square_leg, custom };

std::string to_string(ScheduleKind kind);

// Control-amplitude errors layered on a clean schedule.
struct Perturbation {
  double rabi_scale = 1.0;      // Ω and g multiplied by r
  double detuning_scale = 1.0;  // Δ multiplied by r′
  std::vector<double> rabi_noise;  // per-bin multiplier on Ω, bins uniform over [0, T)

  bool is_identity() const;
};

class ParameterSchedule {
 public:
  using Profile = std::function<double(double)>;

  ParameterSchedule(ScheduleKind kind, double duration, double omega0, Profile theta,
                    Profile phi_mix, Profile varphi, std::vector<double> breakpoints = {});

  ScheduleKind kind() const { return kind_; }
  double duration() const { return duration_; }
  double omega0() const { return omega0_; }
  // Interior times where a profile may jump. Profiles take their right-hand
  // value at a breakpoint.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const Perturbation& perturbation() const { return perturbation_; }

  ControlPoint point_at(double t) const;
  Couplings couplings_at(double t) const;
  // Uses the noise bin containing `anchor` instead of the one containing t.
  Couplings couplings_at(double t, double anchor) const;

  ParameterSchedule with_perturbation(Perturbation p) const;

 private:
  ScheduleKind kind_;
  double duration_;
  double omega0_;
  Profile theta_, phi_mix_, varphi_;
  std::vector<double> breakpoints_;
  Perturbation perturbation_;
};

// Runs pieces back to back. Pieces must be unperturbed and share Ω0.
ParameterSchedule concatenate(const std::vector<ParameterSchedule>& pieces);
ParameterSchedule repeat(const ParameterSchedule& piece, int n);

// θ0{1 + tanh[b(t − T/4)]}/2 on [0, T/2], θ0{1 − tanh[b(t − 3T/4)]}/2 after.
// With clamp, the endpoint offset is removed linearly over T/20 at each end
// so θ(0) = θ(T) = 0 exactly. b ≤ 0 selects the default 10/T.
double allen_eberly_theta(double t, double period, double theta0, double b = 0.0, bool clamp = true);

// x − sin(2πx)/(2π): smooth 0 → 1 ramp on [0, 1] with flat ends.
double smooth_ramp(double x);

struct TriangleLoop {
  double theta0 = 0.5 * pi;
  double delta_varphi = 0.1 * pi;
  double phi_mix = pi / 8;
  double varphi0 = 0.0;
  double omega0 = 2 * pi * 50e3;
  double period = 450e-6;
  double steepness = 0.0;       // b; ≤ 0 selects 10/T
  double ramp_fraction = 0.2;   // width of the ϕ ramp around T/2 in units of T; 0 = step
};

ParameterSchedule triangle_schedule(const TriangleLoop& loop);

// Envelope f(t) = sin²(πt/T) for the composite loops.
double loop_envelope(double t, double period);

// θ = θ1 f, φ = γ f, ϕ = 2πt/T
ParameterSchedule c1_schedule(double theta1, double gamma, double omega0, double period);
// θ = θ2 f, φ = γ f, ϕ = 2π f t/T
ParameterSchedule c2_schedule(double theta2, double gamma, double omega0, double period);

// Constant control point held for `duration`.
ParameterSchedule constant_schedule(const ControlPoint& p, double duration);

}  // namespace nagf
