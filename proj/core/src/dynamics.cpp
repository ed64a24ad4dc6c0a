#include "mapdomain/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace mapdomain {

double max_abs_diff(const MeanValueState& x, const MeanValueState& y) {
  return std::max({std::abs(x.a.x - y.a.x), std::abs(x.a.y - y.a.y), std::abs(x.a.z - y.a.z), std::abs(x.c1 - y.c1),
                   std::abs(x.c2 - y.c2)});
}

MeanValueState evolve_mean_values(const MeanValueState& m, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  // Two independent rotations: (a1, c2) and (a2, c1); a3 is conserved.
  MeanValueState out;
  out.a.x = m.a.x * c - m.c2 * s;
  out.a.y = m.a.y * c + m.c1 * s;
  out.a.z = m.a.z;
  out.c1 = m.c1 * c - m.a.y * s;
  out.c2 = m.c2 * c + m.a.x * s;
  return out;
}

Matrix4 unitary(double t) {
  const Matrix4 generator = kron(pauli(3, Qubit::sigma), pauli(1, Qubit::xi));
  return std::cos(t / 2.0) * Matrix4::identity() + complex(0.0, -std::sin(t / 2.0)) * generator;
}

Matrix4 evolve_density(const Matrix4& rho, double t) {
  // Validates rho; the reduced state itself is not needed.
  static_cast<void>(partial_trace_xi(rho));
  const Matrix4 u = unitary(t);
  return u * rho * u.adjoint();
}

double crosscheck(const TwoQubitState& s, double t) {
  const MeanValueState closed = evolve_mean_values(MeanValueState::from_state(s), t);
  const Matrix4 rho_t = evolve_density(density_from_params(s), t);
  const Matrix4 s1x1 = kron(pauli(1), pauli(1, Qubit::xi));
  const Matrix4 s2x1 = kron(pauli(2), pauli(1, Qubit::xi));
  MeanValueState via_unitary;
  via_unitary.a = bloch_vector(partial_trace_xi(rho_t));
  via_unitary.c1 = expectation(rho_t, s1x1);
  via_unitary.c2 = expectation(rho_t, s2x1);
  return max_abs_diff(closed, via_unitary);
}

}  // namespace mapdomain
