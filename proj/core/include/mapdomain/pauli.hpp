#pragma once

// Two-qubit Pauli algebra and density-matrix machinery.
//
// The first tensor factor is always the open qubit (Sigma), the second the
// partner qubit (Xi). Matrices are dense, row-major, fixed size.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mapdomain {

using complex = std::complex<double>;

/// Thrown when a matrix handed to a routine is not a valid density matrix
/// (non-Hermitian or wrong trace).
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

template <std::size_t N>
struct SquareMatrix {
  static constexpr std::size_t dim = N;
  std::array<complex, N * N> entries{};

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  complex& operator()(std::size_t row, std::size_t col) { return entries[row * N + col]; }
  const complex& operator()(std::size_t row, std::size_t col) const { return entries[row * N + col]; }

  SquareMatrix adjoint() const {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  complex trace() const {
    complex sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) sum += (*this)(i, i);
    return sum;
  }

  /// Largest entrywise deviation |M - M^dagger|.
  double hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j) worst = std::max(worst, std::norm((*this)(i, j) - std::conj((*this)(j, i))));
    return std::sqrt(worst);
  }

  bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() <= tol; }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) entries[k] += o.entries[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) entries[k] -= o.entries[k];
    return *this;
  }
  SquareMatrix& operator*=(complex s) {
    for (auto& e : entries) e *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, complex s) { return a *= s; }
  friend SquareMatrix operator*(complex s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const complex aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  /// Largest entrywise |a - b|.
  friend double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < N * N; ++k) worst = std::max(worst, std::abs(a.entries[k] - b.entries[k]));
    return worst;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

/// Mean values (<P1>, <P2>, <P3>) of one qubit's Pauli matrices.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const;
  double norm_squared() const { return x * x + y * y + z * z; }

  friend BlochVector operator+(const BlochVector& a, const BlochVector& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend BlochVector operator*(double s, const BlochVector& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

enum class Qubit { sigma, xi };

/// Fifteen-parameter description of a two-qubit state.
///
/// `t[i][j]` is <Sigma_{i+1} Xi_{j+1}>. Unphysical parameter sets are
/// representable; physicality is checked separately with is_physical().
struct TwoQubitState {
  BlochVector a;
  BlochVector b;
  std::array<std::array<double, 3>, 3> t{};

  friend bool operator==(const TwoQubitState&, const TwoQubitState&) = default;
};

/// Default tolerance on eigenvalue negativity for physicality verdicts.
inline constexpr double kPhysicalityTol = 1e-9;

struct PhysicalityVerdict {
  bool physical = false;
  /// Minimum eigenvalue of the reconstructed density matrix.
  double margin = 0.0;
};

/// Standard Pauli matrix P_index, index in {1,2,3}. Both qubits use the same
/// matrices; `which` is accepted for readability at call sites.
Matrix2 pauli(int index, Qubit which = Qubit::sigma);

/// Tensor product with `sigma_factor` acting on the first qubit.
Matrix4 kron(const Matrix2& sigma_factor, const Matrix2& xi_factor);

/// rho = 1/4 (I + sum a_i S_i x I + sum b_j I x X_j + sum T_ij S_i x X_j).
Matrix4 density_from_params(const TwoQubitState& s);

/// Inverse of density_from_params. Throws validation_error unless rho is
/// Hermitian and unit-trace within 1e-12.
TwoQubitState params_from_density(const Matrix4& rho);

/// Reduced state of the Sigma qubit.
Matrix2 partial_trace_xi(const Matrix4& rho);

/// Bloch vector of a single-qubit matrix: (tr(rho P1), tr(rho P2), tr(rho P3)).
BlochVector bloch_vector(const Matrix2& rho);

/// Real part of tr(rho * op).
double expectation(const Matrix4& rho, const Matrix4& op);

/// All eigenvalues of a Hermitian 4x4 matrix, ascending (cyclic complex Jacobi).
/// Throws validation_error if the input deviates from Hermitian by more than 1e-10.
std::array<double, 4> hermitian_eigenvalues(const Matrix4& m);

double min_eigenvalue(const Matrix4& m);

PhysicalityVerdict is_physical(const TwoQubitState& s, double tol = kPhysicalityTol);

}  // namespace mapdomain
