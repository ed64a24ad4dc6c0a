#pragma once

#include <cmath>

namespace mapdomain::detail {

struct LineMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of a unimodal function on [lo, hi].
template <typename F>
LineMax golden_section_max(F&& f, double lo, double hi, double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 200 && hi - lo > x_tol; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? LineMax{x1, f1} : LineMax{x2, f2};
}

}  // namespace mapdomain::detail
