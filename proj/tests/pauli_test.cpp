#include "mapdomain/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace mapdomain;
using mapdomain::fixtures::uniform;

TEST(pauli, standard_matrices) {
  const Matrix2 z = pauli(3, Qubit::sigma);
  EXPECT_EQ(z(0, 0), complex(1.0));
  EXPECT_EQ(z(1, 1), complex(-1.0));
  EXPECT_EQ(z(0, 1), complex(0.0));
  EXPECT_EQ(z(1, 0), complex(0.0));

  for (int i = 1; i <= 3; ++i) {
    const Matrix2 p = pauli(i, Qubit::xi);
    EXPECT_EQ(p * p, Matrix2::identity());
    EXPECT_EQ(p.trace(), complex(0.0));
    EXPECT_TRUE(p.is_hermitian(0.0));
  }
  // P1 P2 = i P3.
  EXPECT_EQ(pauli(1) * pauli(2), complex(0.0, 1.0) * pauli(3));
}

TEST(pauli, index_out_of_range) {
  EXPECT_THROW(pauli(0), std::invalid_argument);
  EXPECT_THROW(pauli(4), std::invalid_argument);
  EXPECT_THROW(pauli(-1, Qubit::xi), std::invalid_argument);
}

TEST(pauli, kron_identities) {
  const Matrix2 id = Matrix2::identity();
  EXPECT_EQ(kron(id, id), Matrix4::identity());

  const Matrix4 s3x1 = kron(pauli(3), pauli(1, Qubit::xi));
  EXPECT_EQ(s3x1 * s3x1, Matrix4::identity());

  EXPECT_EQ(kron(pauli(1), id) * kron(id, pauli(1, Qubit::xi)), kron(pauli(1), pauli(1, Qubit::xi)));

  // Sigma factor first: (S3 x I) = diag(1, 1, -1, -1).
  const Matrix4 s3 = kron(pauli(3), id);
  EXPECT_EQ(s3(1, 1), complex(1.0));
  EXPECT_EQ(s3(2, 2), complex(-1.0));
}

TEST(pauli, density_maximally_mixed) {
  const Matrix4 rho = density_from_params(TwoQubitState{});
  EXPECT_EQ(rho, 0.25 * Matrix4::identity());
}

TEST(pauli, density_expectations_and_trace) {
  for (int trial = 0; trial < 200; ++trial) {
    const TwoQubitState s = fixtures::random_params();
    const Matrix4 rho = density_from_params(s);
    EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-15);
    EXPECT_TRUE(rho.is_hermitian(0.0));
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        EXPECT_NEAR(expectation(rho, kron(pauli(i), pauli(j, Qubit::xi))), s.t[i - 1][j - 1], 1e-14);
      }
  }
}

TEST(pauli, edge_state_spectrum) {
  // a = (0, cos q, 0), T11 = sin q: S2 x I and S1 x X1 anticommute, so the
  // traceless part has eigenvalues +-1 and rho has spectrum {0, 0, 1/2, 1/2}.
  for (double q : {0.1, std::numbers::pi / 6, std::numbers::pi / 4, 1.3}) {
    TwoQubitState s;
    s.a = {0.0, std::cos(q), 0.0};
    s.t[0][0] = std::sin(q);
    const auto eig = hermitian_eigenvalues(density_from_params(s));
    EXPECT_NEAR(eig[0], 0.0, 1e-14);
    EXPECT_NEAR(eig[1], 0.0, 1e-14);
    EXPECT_NEAR(eig[2], 0.5, 1e-14);
    EXPECT_NEAR(eig[3], 0.5, 1e-14);
    // Cross-check against the characteristic polynomial: lambda^2 (lambda - 1/2)^2.
    const auto k = fixtures::characteristic_coefficients(density_from_params(s));
    EXPECT_NEAR(k[3], -1.0, 1e-14);
    EXPECT_NEAR(k[2], 0.25, 1e-14);
    EXPECT_NEAR(k[1], 0.0, 1e-14);
    EXPECT_NEAR(k[0], 0.0, 1e-14);
  }
  TwoQubitState s;
  s.a = {0.0, 0.8, 0.0};
  s.t[0][0] = 0.6;
  EXPECT_NEAR(min_eigenvalue(density_from_params(s)), 0.0, 1e-15);
}

TEST(pauli, params_round_trip) {
  EXPECT_EQ(params_from_density(0.25 * Matrix4::identity()), TwoQubitState{});
  for (int trial = 0; trial < 1000; ++trial) {
    const TwoQubitState s = fixtures::random_params();
    const TwoQubitState back = params_from_density(density_from_params(s));
    for (std::size_t i = 0; i < 3; ++i) {
      ASSERT_NEAR(back.a[i], s.a[i], 1e-12);
      ASSERT_NEAR(back.b[i], s.b[i], 1e-12);
      for (std::size_t j = 0; j < 3; ++j) ASSERT_NEAR(back.t[i][j], s.t[i][j], 1e-12);
    }
  }
}

TEST(pauli, params_read_off) {
  const Matrix4 rho = 0.25 * (Matrix4::identity() + kron(pauli(2), Matrix2::identity()));
  const TwoQubitState s = params_from_density(rho);
  EXPECT_NEAR(s.a.x, 0.0, 1e-15);
  EXPECT_NEAR(s.a.y, 1.0, 1e-15);
  EXPECT_NEAR(s.a.z, 0.0, 1e-15);
  EXPECT_NEAR(s.b.norm(), 0.0, 1e-15);
}

TEST(pauli, params_validation) {
  Matrix4 not_hermitian = 0.25 * Matrix4::identity();
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(params_from_density(not_hermitian), validation_error);
  EXPECT_THROW(params_from_density(0.3 * Matrix4::identity()), validation_error);
  EXPECT_THROW(partial_trace_xi(not_hermitian), validation_error);
}

TEST(pauli, partial_trace) {
  EXPECT_EQ(partial_trace_xi(0.25 * Matrix4::identity()), 0.5 * Matrix2::identity());

  // Product state.
  const Matrix2 rho_sigma = 0.5 * (Matrix2::identity() + 0.3 * pauli(1) - 0.4 * pauli(3));
  const Matrix2 rho_xi = 0.5 * (Matrix2::identity() + 0.7 * pauli(2, Qubit::xi));
  EXPECT_LT(max_abs_diff(partial_trace_xi(kron(rho_sigma, rho_xi)), rho_sigma), 1e-15);

  // Correlations trace out.
  TwoQubitState s;
  s.a = {0.0, 0.5, 0.0};
  s.t[0][0] = 0.5;
  const Matrix2 expected = 0.5 * (Matrix2::identity() + 0.5 * pauli(2));
  EXPECT_LT(max_abs_diff(partial_trace_xi(density_from_params(s)), expected), 1e-15);

  for (int trial = 0; trial < 500; ++trial) {
    const TwoQubitState r = fixtures::random_params();
    const BlochVector a = bloch_vector(partial_trace_xi(density_from_params(r)));
    ASSERT_NEAR(a.x, r.a.x, 1e-12);
    ASSERT_NEAR(a.y, r.a.y, 1e-12);
    ASSERT_NEAR(a.z, r.a.z, 1e-12);
  }
}

TEST(pauli, min_eigenvalue_examples) {
  EXPECT_NEAR(min_eigenvalue(0.25 * Matrix4::identity()), 0.25, 1e-15);
  Matrix4 d;
  d(0, 0) = 0.5;
  d(1, 1) = 0.5;
  EXPECT_NEAR(min_eigenvalue(d), 0.0, 1e-15);
  const Matrix4 over = 0.25 * (Matrix4::identity() + 1.2 * kron(pauli(2), Matrix2::identity()));
  EXPECT_NEAR(min_eigenvalue(over), -0.05, 1e-15);
}

TEST(pauli, min_eigenvalue_rejects_non_hermitian) {
  Matrix4 m = Matrix4::identity();
  m(1, 2) = complex(0.0, 1e-9);
  EXPECT_THROW(min_eigenvalue(m), validation_error);
  // Within the 1e-10 allowance it is accepted.
  m(1, 2) = complex(0.0, 1e-11);
  EXPECT_NO_THROW(min_eigenvalue(m));
}

TEST(pauli, eigenvalues_match_known_spectra) {
  for (int trial = 0; trial < 500; ++trial) {
    std::array<double, 4> spectrum{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    if (trial % 5 == 0) spectrum[1] = spectrum[0];  // degenerate pairs
    if (trial % 7 == 0) spectrum[3] = spectrum[2] = spectrum[1];
    const auto eig = hermitian_eigenvalues(fixtures::with_spectrum(spectrum));
    std::sort(spectrum.begin(), spectrum.end());
    for (std::size_t i = 0; i < 4; ++i) ASSERT_NEAR(eig[i], spectrum[i], 1e-12);
  }
}

TEST(pauli, eigenvalues_agree_with_characteristic_polynomial) {
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix4 rho = density_from_params(fixtures::random_params());
    const auto eig = hermitian_eigenvalues(rho);
    const auto k = fixtures::characteristic_coefficients(rho);
    const auto e = fixtures::elementary_symmetric(eig);
    // Vieta: k3 = -e1, k2 = e2, k1 = -e3, k0 = e4.
    ASSERT_NEAR(k[3], -e[0], 1e-12);
    ASSERT_NEAR(k[2], e[1], 1e-12);
    ASSERT_NEAR(k[1], -e[2], 1e-12);
    ASSERT_NEAR(k[0], e[3], 1e-12);
    for (double lambda : eig) {
      const double p = (((lambda + k[3]) * lambda + k[2]) * lambda + k[1]) * lambda + k[0];
      ASSERT_NEAR(p, 0.0, 1e-12);
    }
  }
}

TEST(pauli, is_physical_verdicts) {
  const PhysicalityVerdict mixed = is_physical(TwoQubitState{});
  EXPECT_TRUE(mixed.physical);
  EXPECT_NEAR(mixed.margin, 0.25, 1e-15);

  TwoQubitState long_vector;
  long_vector.a = {0.0, 1.05, 0.0};
  const PhysicalityVerdict bad = is_physical(long_vector);
  EXPECT_FALSE(bad.physical);
  EXPECT_NEAR(bad.margin, -0.0125, 1e-15);

  TwoQubitState edge;
  edge.a = {0.0, std::cos(0.7), 0.0};
  edge.t[0][0] = std::sin(0.7);
  const PhysicalityVerdict on_edge = is_physical(edge);
  EXPECT_TRUE(on_edge.physical);
  EXPECT_NEAR(on_edge.margin, 0.0, 1e-15);

  EXPECT_THROW(is_physical(edge, -1e-3), std::invalid_argument);
}

TEST(pauli, slice_boundary_matches_formula) {
  // For a = (0, a2, 0), T11 = c: min eigenvalue is (1 - sqrt(a2^2 + c^2)) / 4.
  for (int k = 0; k < 100; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 100.0;
    TwoQubitState s;
    s.a = {0.0, std::cos(angle), 0.0};
    s.t[0][0] = std::sin(angle);
    ASSERT_LT(std::abs(is_physical(s).margin), 1e-12);
  }
  for (int trial = 0; trial < 300; ++trial) {
    TwoQubitState s;
    s.a = {0.0, uniform(-1.3, 1.3), 0.0};
    s.t[0][0] = uniform(-1.3, 1.3);
    const double expected = 0.25 * (1.0 - std::hypot(s.a.y, s.t[0][0]));
    ASSERT_NEAR(is_physical(s).margin, expected, 1e-12);
  }
}
