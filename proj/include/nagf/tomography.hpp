#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nagf/su2.hpp"

namespace nagf {

// Pseudospin input prepared before the gate: |2⟩, |4⟩ or (|2⟩ + |4⟩)/√2.
enum class InputState { two, four, plus };
enum class MeasurementBasis { x, y, z };

std::string to_string(InputState s);
std::string to_string(MeasurementBasis b);
State2 input_vector(InputState s);

struct TomographyRecord {
  InputState input = InputState::two;
  Vec3 expectation = Vec3::Zero();     // ⟨σx⟩, ⟨σy⟩, ⟨σz⟩
  Vec3 standard_error = Vec3::Zero();
  int shots = 0;                       // 0 marks exact expectations
  std::uint64_t seed = 0;
};

struct Reconstruction {
  Unitary2 unitary;
  bool phase_indeterminate = false;  // ⟨σx⟩ = ⟨σy⟩ = 0, relative phase unknown
  bool column_phase_fixed = false;   // a superposition record pinned the z-phase
};

// SU(2) estimate [[a, −b*], [b, a*]]. Basis-state records fix (a, b) up to a
// common phase; without a superposition record a is taken real. The overall
// sign, invisible to every record, is chosen so that Re tr U ≥ 0. A record is
// rejected when its Bloch vector exceeds 1 by more than bloch_tolerance plus
// five standard errors.
Reconstruction reconstruct_unitary(const std::vector<TomographyRecord>& records,
                                   double bloch_tolerance = 0.05);

// [[cos θ, sin θ e^{−iφ}], [sin θ e^{iφ}, −cos θ]]
Unitary2 holonomic_tomo_pulse(double theta_nd, double varphi_nd);

// Pre-rotation mapping the requested Pauli operator onto σz.
Unitary2 measurement_rotation(MeasurementBasis b);

struct MeasurementEstimate {
  double expectation = 0.0;
  double standard_error = 0.0;
  int shots = 0;
};

// Binomial sampling of the pseudospin (|2⟩,|4⟩) part of psi.
MeasurementEstimate simulate_measurement(const State4& psi, MeasurementBasis basis, int shots,
                                         std::uint64_t seed);

// All three bases, with per-basis seeds derived from `seed`.
TomographyRecord measure_record(const State4& psi, InputState input, int shots, std::uint64_t seed);

// Exact expectations for u applied to the input.
TomographyRecord exact_record(const Unitary2& u, InputState input);

}  // namespace nagf
