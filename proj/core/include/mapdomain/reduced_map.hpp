#pragma once

// Affine maps of the Sigma-qubit Bloch vector obtained by freezing the
// correlations (c1, c2) at their time-0 values, with positivity-domain and
// compatibility-domain verdicts.

#include "mapdomain/pauli.hpp"

namespace mapdomain {

/// Default boundary tolerance for domain verdicts.
inline constexpr double kDomainTol = 1e-9;

struct ReducedMap {
  double c1 = 0.0;
  double c2 = 0.0;
  double t = 0.0;
};

/// Signed verdict: margin > 0 is slack, margin < 0 is violation.
/// inside == (margin >= -tol).
struct DomainVerdict {
  bool inside = false;
  double margin = 0.0;
};

DomainVerdict make_verdict(double margin, double tol);

/// (a1 cos t - c2 sin t, a2 cos t + c1 sin t, a3). Out-of-domain inputs are
/// mapped like any other.
BlochVector apply(const ReducedMap& map, const BlochVector& a);

/// Positivity domain at the map's time: |apply(map, a)| <= 1.
DomainVerdict in_positivity_domain(const ReducedMap& map, const BlochVector& a, double tol = kDomainTol);

struct SupNorm {
  double supremum = 0.0;
  /// A time in [0, pi) attaining the supremum (the norm has period pi).
  double argmax_t = 0.0;
};

/// max over t of |a(t)|, in closed form.
///
/// |a(t)|^2 = a3^2 + (r^2 + k^2)/2 + (r^2 - k^2)/2 cos 2t + (a2 c1 - a1 c2) sin 2t
/// with r^2 = a1^2 + a2^2 and k^2 = c1^2 + c2^2.
SupNorm sup_norm_over_time(double c1, double c2, const BlochVector& a);

/// Numerical route for sup_norm_over_time: dense grid over [0, 2pi) followed by
/// golden-section refinement around the best sample.
SupNorm sup_norm_by_search(double c1, double c2, const BlochVector& a, int grid_points = 4096);

/// Intersection of the positivity domains over all times.
DomainVerdict in_compatibility_domain(double c1, double c2, const BlochVector& a, double tol = kDomainTol);

/// The analytic slice a = (0, a2, 0), c2 = 0: a2^2 + c1^2 <= 1.
DomainVerdict compat_slice_check(double a2, double c1, double tol = kDomainTol);

}  // namespace mapdomain
