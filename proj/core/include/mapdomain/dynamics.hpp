#pragma once

// Exact evolution of the two-qubit system under H = 1/2 Sigma_3 Xi_1.
//
// Two independent routes are provided: the closed-form rotation of the five
// mean values that close under this Hamiltonian, and conjugation of the full
// 4x4 density matrix by the unitary. Time is in radians (unit coupling).

#include "mapdomain/pauli.hpp"

namespace mapdomain {

/// The Sigma-qubit Bloch vector together with the two correlations that
/// drive it: c1 = <Sigma_1 Xi_1>, c2 = <Sigma_2 Xi_1>.
struct MeanValueState {
  BlochVector a;
  double c1 = 0.0;
  double c2 = 0.0;

  static MeanValueState from_state(const TwoQubitState& s) { return {s.a, s.t[0][0], s.t[1][0]}; }

  friend bool operator==(const MeanValueState&, const MeanValueState&) = default;
};

/// Largest absolute difference over the five components.
double max_abs_diff(const MeanValueState& x, const MeanValueState& y);

MeanValueState evolve_mean_values(const MeanValueState& m, double t);

/// U(t) = cos(t/2) I - i sin(t/2) Sigma_3 x Xi_1.
Matrix4 unitary(double t);

/// U(t) rho U(t)^dagger. Throws validation_error on a malformed rho.
Matrix4 evolve_density(const Matrix4& rho, double t);

/// Max discrepancy between the closed form and the unitary route for the
/// five mean values (a, <S1 X1>, <S2 X1>).
double crosscheck(const TwoQubitState& s, double t);

}  // namespace mapdomain
