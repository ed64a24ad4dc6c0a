#include "mapdomain/conjunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "golden_section.hpp"

namespace mapdomain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_full_period(double x) {
  x = std::fmod(x, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  return x;
}

// |<Sigma_2>(legs...)| for the frozen map on the slice.
double slice_magnitude(double a2, double c1, const double* legs, int count) {
  double v = a2;
  for (int k = 0; k < count; ++k) v = v * std::cos(legs[k]) + c1 * std::sin(legs[k]);
  return std::abs(v);
}

struct GridSearch {
  double c1;
  int n;
  int points;
  std::vector<double> cos_table;
  std::vector<double> sin_table;
  double best = -1.0;
  std::array<int, 4> best_index{};
  std::array<int, 4> index{};

  // Legs 0..n-1 are enumerated recursively; the last leg is the hot loop.
  void run(int level, double v) {
    if (level == n) {
      double local_best = -1.0;
      int local_index = 0;
      for (int i = 0; i < points; ++i) {
        const double w = std::abs(v * cos_table[i] + c1 * sin_table[i]);
        if (w > local_best) {
          local_best = w;
          local_index = i;
        }
      }
      if (local_best > best) {
        best = local_best;
        index[level] = local_index;
        best_index = index;
      }
      return;
    }
    for (int i = 0; i < points; ++i) {
      index[level] = i;
      run(level + 1, v * cos_table[i] + c1 * sin_table[i]);
    }
  }
};

}  // namespace

double ConjunctionSchedule::total_duration() const {
  double total = t;
  for (double s : steps) total += s;
  return total;
}

EdgeState EdgeState::at(double q) {
  if (!(q > 0.0 && q < std::numbers::pi / 2.0)) {
    throw std::invalid_argument("edge-state angle q must lie in (0, pi/2), got " + std::to_string(q));
  }
  return EdgeState(q);
}

double EdgeState::a2() const { return std::cos(q_); }
double EdgeState::c1() const { return std::sin(q_); }

HazardReport conjunct(double c1, double c2, const BlochVector& a, const ConjunctionSchedule& sched, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  HazardReport report;
  report.magnitudes.reserve(sched.n() + 1);
  report.trajectory.reserve(sched.n() + 1);
  BlochVector current = a;
  double worst = 0.0;
  for (std::size_t k = 0; k <= sched.n(); ++k) {
    current = apply(ReducedMap{c1, c2, sched.leg(k)}, current);
    const double magnitude = current.norm();
    report.trajectory.push_back(current);
    report.magnitudes.push_back(magnitude);
    worst = std::max(worst, magnitude);
    if (!report.first_unphysical_step && magnitude > 1.0 + tol) report.first_unphysical_step = k;
  }
  report.worst_margin = 1.0 - worst;
  return report;
}

std::vector<MeanValueState> exact_trajectory(const MeanValueState& initial, const ConjunctionSchedule& sched) {
  std::vector<MeanValueState> out;
  out.reserve(sched.n() + 1);
  double elapsed = 0.0;
  for (std::size_t k = 0; k <= sched.n(); ++k) {
    elapsed += sched.leg(k);
    out.push_back(evolve_mean_values(initial, elapsed));
  }
  return out;
}

double sigma2_conjunction(double a2, double c1, double t, double s) {
  return a2 * std::cos(t) * std::cos(s) + c1 * (std::sin(t) * std::cos(s) + std::sin(s));
}

double hazard_slope_at_join(double q) { return std::sin(q); }

double onset_interval_end(double q) {
  const double a2 = std::cos(q);
  const double c1 = std::sin(q);
  const auto excess = [&](double s) { return sigma2_conjunction(a2, c1, q, s) - 1.0; };
  if (!(c1 > 0.0)) return 0.0;
  // The excess rises from 0 to a single peak and then falls below 0 by s = pi.
  const auto peak = detail::golden_section_max(excess, 0.0, std::numbers::pi / 2.0, 1e-14);
  if (peak.value <= 0.0) return 0.0;
  double lo = peak.x;
  double hi = std::numbers::pi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GrowthResult greedy_extremal_growth(double a2, double c1, int n) {
  if (n < 0) throw std::invalid_argument("number of repetitions must be non-negative");
  GrowthResult result;
  result.magnitudes.reserve(static_cast<std::size_t>(n) + 1);
  BlochVector current{0.0, a2, 0.0};
  for (int k = 0; k <= n; ++k) {
    // v cos s + c1 sin s peaks at +sqrt(v^2 + c1^2) where tan s = c1 / v,
    // with atan2 selecting the quadrant.
    const double leg = wrap_full_period(std::atan2(c1, current.y));
    if (k == 0) {
      result.schedule.t = leg;
    } else {
      result.schedule.steps.push_back(leg);
    }
    current = apply(ReducedMap{c1, 0.0, leg}, current);
    result.magnitudes.push_back(current.norm());
  }
  return result;
}

double brute_force_max(double a2, double c1, int n, int grid_points) {
  if (n < 0) throw std::invalid_argument("number of repetitions must be non-negative");
  if (n > 3) throw std::invalid_argument("brute_force_max supports n <= 3; use greedy_extremal_growth");
  if (grid_points < 64) throw std::invalid_argument("brute_force_max needs at least 64 grid points");

  const double step = kTwoPi / grid_points;
  GridSearch search{c1, n, grid_points, {}, {}};
  search.cos_table.resize(static_cast<std::size_t>(grid_points));
  search.sin_table.resize(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    search.cos_table[static_cast<std::size_t>(i)] = std::cos(i * step);
    search.sin_table[static_cast<std::size_t>(i)] = std::sin(i * step);
  }
  // Leg 0 acts on a2 itself; treat it as level 0 with v = a2 and c1 kick.
  search.run(0, a2);

  std::array<double, 4> legs{};
  for (int k = 0; k <= n; ++k) legs[static_cast<std::size_t>(k)] = search.best_index[static_cast<std::size_t>(k)] * step;
  double best = slice_magnitude(a2, c1, legs.data(), n + 1);

  // Coordinate-wise golden-section sweeps within one grid cell of the best
  // sample, repeated until a sweep stops improving.
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double before = best;
    for (int k = 0; k <= n; ++k) {
      const double centre = legs[static_cast<std::size_t>(k)];
      auto trial = legs;
      const auto line = detail::golden_section_max(
          [&](double x) {
            trial[static_cast<std::size_t>(k)] = x;
            return slice_magnitude(a2, c1, trial.data(), n + 1);
          },
          centre - step, centre + step, 1e-13);
      if (line.value > best) {
        best = line.value;
        legs[static_cast<std::size_t>(k)] = line.x;
      }
    }
    if (best - before <= 1e-16) break;
  }
  return best;
}

bool survives_repetitions(double a2, double c1, std::int64_t n, double tol) {
  const double total = a2 * a2 + static_cast<double>(n + 1) * (c1 * c1);
  return 1.0 - std::sqrt(total) >= -tol;
}

std::optional<std::int64_t> first_unphysical_n(double a2, double c1, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  if (!survives_repetitions(a2, c1, 0, tol)) return 0;
  const double c1_sq = c1 * c1;
  if (c1_sq == 0.0) return std::nullopt;

  // Estimate from the real-valued boundary, then settle on the exact
  // predicate by integer steps.
  const double limit = (1.0 + tol) * (1.0 + tol);
  const double estimate = std::floor((limit - a2 * a2) / c1_sq);
  if (!(estimate < 9.0e18)) return std::nullopt;
  std::int64_t n = std::max<std::int64_t>(0, static_cast<std::int64_t>(estimate) - 1);
  while (n > 0 && !survives_repetitions(a2, c1, n - 1, tol)) --n;
  while (survives_repetitions(a2, c1, n, tol)) ++n;
  return n;
}

}  // namespace mapdomain
