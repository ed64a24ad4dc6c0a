#include "mapdomain/slippage.hpp"

#include <cmath>
#include <stdexcept>

#include "mapdomain/conjunction.hpp"

namespace mapdomain {

namespace {

void require_repetitions(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("slippage needs n >= 1 repetitions");
}

}  // namespace

DomainVerdict slipped_domain_check(double a2, double c1, std::int64_t n, double tol) {
  require_repetitions(n);
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  const double total = a2 * a2 + static_cast<double>(n + 1) * (c1 * c1);
  return make_verdict(1.0 - std::sqrt(total), tol);
}

SafeRepetitions max_safe_repetitions(double a2, double c1, double tol) {
  const auto first_failure = first_unphysical_n(a2, c1, tol);
  if (!first_failure) return {RepetitionLimit::unbounded, 0};
  if (*first_failure <= 1) return {RepetitionLimit::none, 0};
  return {RepetitionLimit::finite, *first_failure - 1};
}

BlochVector slip_state(const BlochVector& a, double c1, std::int64_t n) {
  require_repetitions(n);
  if (a.x != 0.0 || a.z != 0.0) {
    throw std::invalid_argument("slip_state supports only Bloch vectors of the form (0, a2, 0)");
  }
  if (slipped_domain_check(a.y, c1, n, 0.0).inside) return a;
  const double room = std::max(0.0, 1.0 - static_cast<double>(n + 1) * (c1 * c1));
  return {0.0, std::copysign(std::sqrt(room), a.y), 0.0};
}

BlochVector apply_policy(const SlippagePolicy& policy, const BlochVector& a, double c1) {
  require_repetitions(policy.n);
  switch (policy.mode) {
    case SlippageMode::check:
      return a;
    case SlippageMode::radial_scale:
      return slip_state(a, c1, policy.n);
  }
  return a;
}

}  // namespace mapdomain
