#pragma once

// Slipped initial conditions: the restricted slice region
// a2^2 + (n + 1) c1^2 <= 1 on which n worst-case reuses of the frozen map stay
// physical, and the radial projection onto it.

#include <cstdint>

#include "mapdomain/pauli.hpp"
#include "mapdomain/reduced_map.hpp"

namespace mapdomain {

enum class SlippageMode { check, radial_scale };

struct SlippagePolicy {
  std::int64_t n = 1;
  SlippageMode mode = SlippageMode::check;
};

/// inside iff a2^2 + (n + 1) c1^2 <= 1 (within tol on the norm);
/// margin = 1 - sqrt(a2^2 + (n + 1) c1^2). Throws if n < 1.
DomainVerdict slipped_domain_check(double a2, double c1, std::int64_t n, double tol = kDomainTol);

enum class RepetitionLimit {
  /// Even a single reuse can be unphysical.
  none,
  finite,
  /// c1 == 0: the map never grows the state.
  unbounded,
};

struct SafeRepetitions {
  RepetitionLimit limit = RepetitionLimit::none;
  /// Meaningful only for RepetitionLimit::finite.
  std::int64_t count = 0;

  friend bool operator==(const SafeRepetitions&, const SafeRepetitions&) = default;
};

/// Largest n >= 1 with a2^2 + (n + 1) c1^2 <= 1.
SafeRepetitions max_safe_repetitions(double a2, double c1, double tol = kDomainTol);

/// Returns `a` unchanged if it already satisfies the n-reuse condition
/// exactly, otherwise shrinks a2 radially onto its boundary:
/// a2' = sign(a2) sqrt(max(0, 1 - (n + 1) c1^2)). Only the slice
/// a = (0, a2, 0) is supported; other inputs throw std::invalid_argument.
BlochVector slip_state(const BlochVector& a, double c1, std::int64_t n);

/// Dispatches on the policy: `check` returns the input, `radial_scale` slips it.
BlochVector apply_policy(const SlippagePolicy& policy, const BlochVector& a, double c1);

}  // namespace mapdomain
