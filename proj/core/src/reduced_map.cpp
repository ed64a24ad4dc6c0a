#include "mapdomain/reduced_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "golden_section.hpp"

namespace mapdomain {

namespace {

void require_tol(double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
}

double norm_squared_at(double c1, double c2, const BlochVector& a, double t) {
  return apply(ReducedMap{c1, c2, t}, a).norm_squared();
}

double wrap_half_period(double t) {
  t = std::fmod(t, std::numbers::pi);
  if (t < 0.0) t += std::numbers::pi;
  return t;
}

}  // namespace

DomainVerdict make_verdict(double margin, double tol) { return {margin >= -tol, margin}; }

BlochVector apply(const ReducedMap& map, const BlochVector& a) {
  const double c = std::cos(map.t);
  const double s = std::sin(map.t);
  return {a.x * c - map.c2 * s, a.y * c + map.c1 * s, a.z};
}

DomainVerdict in_positivity_domain(const ReducedMap& map, const BlochVector& a, double tol) {
  require_tol(tol);
  return make_verdict(1.0 - apply(map, a).norm(), tol);
}

SupNorm sup_norm_over_time(double c1, double c2, const BlochVector& a) {
  const double r2 = a.x * a.x + a.y * a.y;
  const double k2 = c1 * c1 + c2 * c2;
  const double cos_coeff = 0.5 * (r2 - k2);
  const double sin_coeff = a.y * c1 - a.x * c2;
  const double argmax = wrap_half_period(0.5 * std::atan2(sin_coeff, cos_coeff));

  double max_sq = 0.0;
  if (a.x == 0.0 && c2 == 0.0) {
    // Only the (a2, c1) rotation pair is active.
    max_sq = a.z * a.z + (a.y * a.y + c1 * c1);
  } else if (a.y == 0.0 && c1 == 0.0) {
    max_sq = a.z * a.z + (a.x * a.x + c2 * c2);
  } else {
    max_sq = a.z * a.z + 0.5 * (r2 + k2) + std::hypot(cos_coeff, sin_coeff);
  }
  return {std::sqrt(max_sq), argmax};
}

SupNorm sup_norm_by_search(double c1, double c2, const BlochVector& a, int grid_points) {
  if (grid_points < 3) throw std::invalid_argument("grid_points must be at least 3");
  const double step = 2.0 * std::numbers::pi / grid_points;
  double best_t = 0.0;
  double best = norm_squared_at(c1, c2, a, 0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double t = i * step;
    const double v = norm_squared_at(c1, c2, a, t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  const auto refined = detail::golden_section_max(
      [&](double t) { return norm_squared_at(c1, c2, a, t); }, best_t - step, best_t + step, 1e-13);
  if (refined.value > best) {
    best = refined.value;
    best_t = refined.x;
  }
  return {std::sqrt(best), wrap_half_period(best_t)};
}

DomainVerdict in_compatibility_domain(double c1, double c2, const BlochVector& a, double tol) {
  require_tol(tol);
  return make_verdict(1.0 - sup_norm_over_time(c1, c2, a).supremum, tol);
}

DomainVerdict compat_slice_check(double a2, double c1, double tol) {
  require_tol(tol);
  return make_verdict(1.0 - std::sqrt(a2 * a2 + c1 * c1), tol);
}

}  // namespace mapdomain
