#pragma once

// Map conjunctions: the reduced map established at time 0 is reused, with its
// correlations frozen, over consecutive legs t, s1, ..., sn. The engine
// reports when the resulting Bloch vectors leave the unit ball.

#include <cstdint>
#include <optional>
#include <vector>

#include "mapdomain/dynamics.hpp"
#include "mapdomain/reduced_map.hpp"

namespace mapdomain {

struct ConjunctionSchedule {
  /// First-leg duration.
  double t = 0.0;
  /// Durations of the n reuse legs. Negative values are accepted.
  std::vector<double> steps;

  std::size_t n() const { return steps.size(); }
  double total_duration() const;
  /// Duration of leg k: t for k == 0, steps[k - 1] otherwise.
  double leg(std::size_t k) const { return k == 0 ? t : steps[k - 1]; }
};

struct HazardReport {
  /// |a| after each leg; size n + 1.
  std::vector<double> magnitudes;
  /// Bloch vector after each leg; size n + 1.
  std::vector<BlochVector> trajectory;
  /// Index of the first leg whose output has |a| > 1 + tol (0 = first leg).
  std::optional<std::size_t> first_unphysical_step;
  /// 1 - max(magnitudes).
  double worst_margin = 1.0;
};

/// A point on the boundary of the compatibility slice: a2 = cos q, c1 = sin q.
class EdgeState {
 public:
  /// Throws std::invalid_argument unless 0 < q < pi/2.
  static EdgeState at(double q);

  double q() const { return q_; }
  double a2() const;
  double c1() const;
  BlochVector bloch() const { return {0.0, a2(), 0.0}; }

 private:
  explicit EdgeState(double q) : q_(q) {}
  double q_;
};

HazardReport conjunct(double c1, double c2, const BlochVector& a, const ConjunctionSchedule& sched,
                      double tol = kDomainTol);

/// Exact mean values at the same cumulative times as the legs of `sched`
/// (correlations evolve); size n + 1.
std::vector<MeanValueState> exact_trajectory(const MeanValueState& initial, const ConjunctionSchedule& sched);

/// <Sigma_2>(t|s) on the slice a = (0, a2, 0), c2 = 0:
/// a2 cos t cos s + c1 (sin t cos s + sin s).
double sigma2_conjunction(double a2, double c1, double t, double s);

/// d<Sigma_2>(q|s)/ds at s = 0 for the edge state at q, which is sin q.
double hazard_slope_at_join(double q);

/// Right end s* of the interval (0, s*) on which <Sigma_2>(q|s) > 1 for the
/// edge state at q, located numerically. Returns 0 when there is no such
/// interval (q <= 0).
double onset_interval_end(double q);

struct GrowthResult {
  /// Magnitudes after each of the n + 1 legs of the worst-case schedule.
  std::vector<double> magnitudes;
  /// The maximizing schedule; every leg lies in [0, 2pi).
  ConjunctionSchedule schedule;
};

/// Worst-case conjunction on the slice: each leg is chosen to maximize the
/// magnitude, giving M_k^2 = a2^2 + (k + 1) c1^2. Throws if n < 0.
GrowthResult greedy_extremal_growth(double a2, double c1, int n);

/// Independent check of greedy_extremal_growth: the largest |<Sigma_2>(t|s1|...|sn)|
/// over a uniform grid on [0, 2pi)^(n+1), polished by coordinate-wise
/// golden-section sweeps. Requires 0 <= n <= 3 and grid_points >= 64.
double brute_force_max(double a2, double c1, int n, int grid_points);

/// Smallest n >= 0 with sqrt(a2^2 + (n + 1) c1^2) > 1 + tol. Absent if
/// c1 == 0 and |a2| <= 1 + tol (no growth).
std::optional<std::int64_t> first_unphysical_n(double a2, double c1, double tol = kDomainTol);

/// The predicate shared by first_unphysical_n and the slippage checks:
/// sqrt(a2^2 + (n + 1) c1^2) <= 1 + tol.
bool survives_repetitions(double a2, double c1, std::int64_t n, double tol = kDomainTol);

}  // namespace mapdomain
