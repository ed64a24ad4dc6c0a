#include "mapdomain/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mapdomain {

namespace {

constexpr double kDensityTol = 1e-12;
constexpr double kEigenHermitianTol = 1e-10;

void require_density(const Matrix4& rho) {
  const double herm = rho.hermiticity_error();
  if (herm > kDensityTol) {
    throw validation_error("matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const complex tr = rho.trace();
  if (std::abs(tr - 1.0) > kDensityTol) {
    throw validation_error("matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
}

const std::array<Matrix2, 4>& pauli_table() {
  static const std::array<Matrix2, 4> table = [] {
    std::array<Matrix2, 4> m{};
    m[0] = Matrix2::identity();
    m[1](0, 1) = 1.0;
    m[1](1, 0) = 1.0;
    m[2](0, 1) = complex(0.0, -1.0);
    m[2](1, 0) = complex(0.0, 1.0);
    m[3](0, 0) = 1.0;
    m[3](1, 1) = -1.0;
    return m;
  }();
  return table;
}

// basis()[4 * i + j] = P_i x P_j, with P_0 the identity.
const std::array<Matrix4, 16>& product_basis() {
  static const std::array<Matrix4, 16> table = [] {
    std::array<Matrix4, 16> m{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m[4 * i + j] = kron(pauli_table()[i], pauli_table()[j]);
    return m;
  }();
  return table;
}

// Each P_i x P_j has exactly one nonzero entry per row.
struct SparseProduct {
  std::array<std::size_t, 4> col{};
  std::array<complex, 4> value{};
};

const std::array<SparseProduct, 16>& sparse_basis() {
  static const std::array<SparseProduct, 16> table = [] {
    std::array<SparseProduct, 16> out{};
    for (std::size_t k = 0; k < 16; ++k)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
          if (product_basis()[k](r, c) != 0.0) {
            out[k].col[r] = c;
            out[k].value[r] = product_basis()[k](r, c);
          }
    return out;
  }();
  return table;
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(norm_squared()); }

Matrix2 pauli(int index, Qubit /*which*/) {
  if (index < 1 || index > 3) {
    throw std::invalid_argument("Pauli index must be 1, 2 or 3, got " + std::to_string(index));
  }
  return pauli_table()[static_cast<std::size_t>(index)];
}

Matrix4 kron(const Matrix2& sigma_factor, const Matrix2& xi_factor) {
  Matrix4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = sigma_factor(i, j) * xi_factor(k, l);
  return m;
}

Matrix4 density_from_params(const TwoQubitState& s) {
  const auto& basis = sparse_basis();
  std::array<double, 16> coeff{};
  coeff[0] = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    coeff[4 * (i + 1)] = s.a[i];
    coeff[i + 1] = s.b[i];
    for (std::size_t j = 0; j < 3; ++j) coeff[4 * (i + 1) + j + 1] = s.t[i][j];
  }
  Matrix4 rho;
  for (std::size_t k = 0; k < 16; ++k) {
    if (coeff[k] == 0.0) continue;
    for (std::size_t r = 0; r < 4; ++r) rho(r, basis[k].col[r]) += (0.25 * coeff[k]) * basis[k].value[r];
  }
  // Diagonal and lower triangle are set from the upper triangle so that the
  // result is Hermitian bit-for-bit and has trace exactly one.
  for (std::size_t i = 0; i < 4; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return rho;
}

double expectation(const Matrix4& rho, const Matrix4& op) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) sum += (rho(i, k) * op(k, i)).real();
  return sum;
}

TwoQubitState params_from_density(const Matrix4& rho) {
  require_density(rho);
  const auto& basis = product_basis();
  TwoQubitState s;
  const auto read = [&](std::size_t i, std::size_t j) { return expectation(rho, basis[4 * i + j]); };
  s.a = {read(1, 0), read(2, 0), read(3, 0)};
  s.b = {read(0, 1), read(0, 2), read(0, 3)};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s.t[i][j] = read(i + 1, j + 1);
  return s;
}

Matrix2 partial_trace_xi(const Matrix4& rho) {
  require_density(rho);
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return out;
}

BlochVector bloch_vector(const Matrix2& rho) {
  const auto& p = pauli_table();
  const auto read = [&](std::size_t k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) sum += (rho(i, j) * p[k](j, i)).real();
    return sum;
  };
  return {read(1), read(2), read(3)};
}

std::array<double, 4> hermitian_eigenvalues(const Matrix4& m) {
  const double herm = m.hermiticity_error();
  if (herm > kEigenHermitianTol) {
    throw validation_error("eigenvalue routine needs a Hermitian matrix (deviation " + std::to_string(herm) + ")");
  }
  // Work on split real/imaginary parts; std::complex multiplication carries
  // NaN-recovery branches that dominate the cost at this size.
  double re[4][4];
  double im[4][4];
  double scale = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      re[i][j] = m(i, j).real();
      im[i][j] = m(i, j).imag();
      scale = std::max(scale, std::abs(re[i][j]) + std::abs(im[i][j]));
    }
  for (std::size_t i = 0; i < 4; ++i) im[i][i] = 0.0;

  // Cyclic Jacobi. Each rotation is a phase fix that makes a(p,q) real,
  // followed by the classical real rotation that zeroes it.
  const double threshold = 1e-34 * std::max(scale * scale, 1e-300);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) off += re[p][q] * re[p][q] + im[p][q] * im[p][q];
    if (off <= threshold) break;

    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const double g = std::sqrt(re[p][q] * re[p][q] + im[p][q] * im[p][q]);
        if (g == 0.0) continue;
        // conj(w) where w = a(p,q) / |a(p,q)|.
        const double wr = re[p][q] / g;
        const double wi = -im[p][q] / g;
        const double app = re[p][p];
        const double aqq = re[q][q];
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Plane unitary U = diag(1, conj(w)) * [[c, s], [-s, c]]:
        // new a(r,p) = c a(r,p) - s conj(w) a(r,q), new a(r,q) = s a(r,p) + c conj(w) a(r,q).
        for (std::size_t r = 0; r < 4; ++r) {
          if (r == p || r == q) continue;
          const double xr = re[r][p];
          const double xi = im[r][p];
          const double yr = re[r][q] * wr - im[r][q] * wi;
          const double yi = re[r][q] * wi + im[r][q] * wr;
          const double new_pr = c * xr - s * yr;
          const double new_pi = c * xi - s * yi;
          const double new_qr = s * xr + c * yr;
          const double new_qi = s * xi + c * yi;
          re[r][p] = new_pr;
          im[r][p] = new_pi;
          re[p][r] = new_pr;
          im[p][r] = -new_pi;
          re[r][q] = new_qr;
          im[r][q] = new_qi;
          re[q][r] = new_qr;
          im[q][r] = -new_qi;
        }
        re[p][p] = app - t * g;
        re[q][q] = aqq + t * g;
        re[p][q] = re[q][p] = 0.0;
        im[p][q] = im[q][p] = 0.0;
      }
    }
  }
  std::array<double, 4> eig{re[0][0], re[1][1], re[2][2], re[3][3]};
  std::sort(eig.begin(), eig.end());
  return eig;
}

double min_eigenvalue(const Matrix4& m) { return hermitian_eigenvalues(m)[0]; }

PhysicalityVerdict is_physical(const TwoQubitState& s, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be non-negative");
  const double lowest = min_eigenvalue(density_from_params(s));
  return {lowest >= -tol, lowest};
}

}  // namespace mapdomain
