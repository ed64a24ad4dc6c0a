#include "mapdomain/compat_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mapdomain {

namespace {

constexpr std::size_t kFree = 10;
using Point = std::array<double, kFree>;

// Free parameters in order: b1, b2, b3, then T[i][j] for every (i, j) except
// (0, 0) and (1, 0).
TwoQubitState assemble(const BlochVector& a, double c1, double c2, const Point& x) {
  TwoQubitState s;
  s.a = a;
  s.b = {x[0], x[1], x[2]};
  s.t[0][0] = c1;
  s.t[1][0] = c2;
  std::size_t k = 3;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == 0 && i < 2) continue;
      s.t[i][j] = x[k++];
    }
  return s;
}

Point clamp_box(Point x) {
  for (auto& v : x) v = std::clamp(v, -1.0, 1.0);
  return x;
}

struct SimplexRun {
  Point best;
  double value;
};

// Nelder-Mead maximization inside the box [-1, 1]^10 (trial points are clamped).
template <typename F>
SimplexRun nelder_mead(F&& objective, const Point& start, double step, const ExtensionSearchConfig& cfg) {
  std::array<Point, kFree + 1> vertex{};
  std::array<double, kFree + 1> value{};
  vertex[0] = clamp_box(start);
  for (std::size_t i = 0; i < kFree; ++i) {
    Point p = vertex[0];
    p[i] += (p[i] + step <= 1.0) ? step : -step;
    vertex[i + 1] = clamp_box(p);
  }
  for (std::size_t i = 0; i <= kFree; ++i) value[i] = objective(vertex[i]);

  std::array<std::size_t, kFree + 1> order{};
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return value[l] > value[r] || (value[l] == value[r] && l < r);
    });
    const std::size_t hi = order.front();
    const std::size_t lo = order.back();
    const std::size_t next_lo = order[kFree - 1];
    if (value[hi] - value[lo] <= cfg.tolerance) break;

    Point centroid{};
    for (std::size_t v = 0; v <= kFree; ++v) {
      if (v == lo) continue;
      for (std::size_t i = 0; i < kFree; ++i) centroid[i] += vertex[v][i];
    }
    for (auto& c : centroid) c /= static_cast<double>(kFree);

    const auto along = [&](double coeff) {
      Point p;
      for (std::size_t i = 0; i < kFree; ++i) p[i] = centroid[i] + coeff * (vertex[lo][i] - centroid[i]);
      return clamp_box(p);
    };

    const Point reflected = along(-1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected > value[hi]) {
      const Point expanded = along(-2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded > f_reflected) {
        vertex[lo] = expanded;
        value[lo] = f_expanded;
      } else {
        vertex[lo] = reflected;
        value[lo] = f_reflected;
      }
      continue;
    }
    if (f_reflected > value[next_lo]) {
      vertex[lo] = reflected;
      value[lo] = f_reflected;
      continue;
    }
    const bool outside = f_reflected > value[lo];
    const Point contracted = along(outside ? -0.5 : 0.5);
    const double f_contracted = objective(contracted);
    if (f_contracted > (outside ? f_reflected : value[lo])) {
      vertex[lo] = contracted;
      value[lo] = f_contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t v = 0; v <= kFree; ++v) {
      if (v == hi) continue;
      for (std::size_t i = 0; i < kFree; ++i) vertex[v][i] = vertex[hi][i] + 0.5 * (vertex[v][i] - vertex[hi][i]);
      value[v] = objective(vertex[v]);
    }
  }
  const auto top = static_cast<std::size_t>(std::distance(
      value.begin(), std::max_element(value.begin(), value.end())));
  return {vertex[top], value[top]};
}

}  // namespace

void ExtensionSearchConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
}

std::uint64_t SeededRandom::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SeededRandom::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

FeasibilityResult feasibility_search(const BlochVector& a, double c1, double c2, const ExtensionSearchConfig& cfg) {
  cfg.validate();
  const auto objective = [&](const Point& x) { return min_eigenvalue(density_from_params(assemble(a, c1, c2, x))); };

  SeededRandom rng(cfg.seed);
  Point best_point{};
  double best_value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    // Restart 0 starts from the uncorrelated extension; the rest from random
    // points in the inner half of the box.
    Point start{};
    if (r > 0) {
      for (auto& v : start) v = rng.uniform(-0.5, 0.5);
    }
    SimplexRun run = nelder_mead(objective, start, 0.25, cfg);
    // Re-seed the simplex at the optimum with smaller steps; this escapes the
    // kinks where eigenvalues cross.
    for (double step : {0.02}) {
      const SimplexRun again = nelder_mead(objective, run.best, step, cfg);
      if (again.value > run.value) run = again;
    }
    if (run.value > best_value) {
      best_value = run.value;
      best_point = run.best;
    }
  }
  return {best_value, assemble(a, c1, c2, best_point)};
}

DomainVerdict is_compatible_oracle(const BlochVector& a, double c1, double c2, const ExtensionSearchConfig& cfg,
                                   double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  return make_verdict(feasibility_search(a, c1, c2, cfg).best_min_eigenvalue, tol);
}

std::vector<CompatQuery> slice_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo < hi)) throw std::invalid_argument("slice grid needs count >= 2 and lo < hi");
  std::vector<CompatQuery> out;
  out.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) out.push_back({{0.0, lo + i * step, 0.0}, lo + j * step, 0.0});
  return out;
}

std::vector<CompatQuery> random_queries(std::size_t count, std::uint64_t seed) {
  SeededRandom rng(seed);
  std::vector<CompatQuery> out;
  out.reserve(count);
  while (out.size() < count) {
    const BlochVector a{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (a.norm_squared() > 1.0) continue;
    out.push_back({a, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  }
  return out;
}

AgreementReport cross_validate(const CrossValidationSpec& spec) {
  AgreementReport report;
  for (const auto& query : spec.points) {
    const DomainVerdict by_sup = in_compatibility_domain(query.c1, query.c2, query.a, spec.tol);
    const FeasibilityResult found = feasibility_search(query.a, query.c1, query.c2, spec.search);
    const DomainVerdict by_oracle = make_verdict(found.best_min_eigenvalue, spec.tol);
    if (std::abs(by_sup.margin) < spec.band || std::abs(by_oracle.margin) < spec.band) {
      ++report.excluded;
      continue;
    }
    ++report.compared;
    if (by_sup.inside != by_oracle.inside) {
      report.disagreements.push_back({query, by_sup.margin, by_oracle.margin, found.witness});
      report.worst_margin_gap =
          std::max(report.worst_margin_gap, std::min(std::abs(by_sup.margin), std::abs(by_oracle.margin)));
    }
  }
  return report;
}

}  // namespace mapdomain
