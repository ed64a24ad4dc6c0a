#pragma once

// Numerical feasibility oracle for the compatibility domain.
//
// (a, c1, c2) is compatible when some physical two-qubit state has Sigma
// Bloch vector a, <Sigma_1 Xi_1> = c1 and <Sigma_2 Xi_1> = c2. The oracle
// maximizes the minimum eigenvalue of the reconstructed density matrix over
// the ten remaining parameters (b and the other seven correlations). The
// minimum eigenvalue of an affine Hermitian family is concave, so a local
// simplex search with restarts finds the global maximum in practice; a
// negative result is numerical evidence of incompatibility, a non-negative
// one comes with an explicit witness.

#include <cstdint>
#include <vector>

#include "mapdomain/pauli.hpp"
#include "mapdomain/reduced_map.hpp"

namespace mapdomain {

struct ExtensionSearchConfig {
  int restarts = 20;
  int max_iterations = 4000;
  /// Stop a simplex run once best and worst vertex values differ by less.
  double tolerance = 1e-10;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on restarts < 1, max_iterations < 1 or tolerance <= 0.
  void validate() const;
};

struct FeasibilityResult {
  double best_min_eigenvalue = 0.0;
  /// State attaining best_min_eigenvalue; a, t[0][0] and t[1][0] are the query values.
  TwoQubitState witness;
};

FeasibilityResult feasibility_search(const BlochVector& a, double c1, double c2, const ExtensionSearchConfig& cfg = {});

/// inside iff best_min_eigenvalue >= -tol; margin = best_min_eigenvalue.
DomainVerdict is_compatible_oracle(const BlochVector& a, double c1, double c2, const ExtensionSearchConfig& cfg = {},
                                   double tol = kDomainTol);

struct CompatQuery {
  BlochVector a;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Row-major (a2, c1) grid on [lo, hi]^2 with a = (0, a2, 0), c2 = 0.
std::vector<CompatQuery> slice_grid(double lo, double hi, int count);

/// Random general queries: a uniform in the unit ball, c1 and c2 uniform in [-1, 1].
std::vector<CompatQuery> random_queries(std::size_t count, std::uint64_t seed);

struct CrossValidationSpec {
  std::vector<CompatQuery> points;
  ExtensionSearchConfig search;
  double tol = kDomainTol;
  /// Points whose margin under either verdict is within this band of 0 are skipped.
  double band = 1e-3;
};

struct Disagreement {
  CompatQuery query;
  double sup_margin = 0.0;
  double oracle_margin = 0.0;
  TwoQubitState witness;
};

struct AgreementReport {
  std::size_t compared = 0;
  std::size_t excluded = 0;
  std::vector<Disagreement> disagreements;
  /// Largest min(|sup_margin|, |oracle_margin|) over disagreements; 0 when none.
  double worst_margin_gap = 0.0;
};

/// Compares the oracle with in_compatibility_domain (sup over time) point by point.
AgreementReport cross_validate(const CrossValidationSpec& spec);

/// Splitmix64-based generator with a portable mapping to doubles, so seeded
/// runs are reproducible across standard libraries.
class SeededRandom {
 public:
  explicit SeededRandom(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace mapdomain
