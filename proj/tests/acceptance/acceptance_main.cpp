// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
// usage: acceptance <mapdomain binary> <hazard scenario> <scratch dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mapdomain/compat_oracle.hpp"
#include "mapdomain/conjunction.hpp"
#include "mapdomain/dynamics.hpp"
#include "mapdomain/reduced_map.hpp"
#include "mapdomain/slippage.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace mapdomain;
using mapdomain::fixtures::uniform;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Random physical state: G G^dagger / tr for a complex Gaussian-ish G.
TwoQubitState random_physical_state() {
  Matrix4 g;
  for (auto& e : g.entries) e = complex(uniform(-1, 1), uniform(-1, 1));
  Matrix4 rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  for (std::size_t i = 0; i < 4; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return params_from_density(rho);
}

// Positive semidefiniteness of rho + shift I by attempting a complex Cholesky factorization.
bool cholesky_succeeds(const Matrix4& rho, double shift) {
  Matrix4 a = rho;
  for (std::size_t i = 0; i < 4; ++i) a(i, i) += shift;
  Matrix4 l;
  for (std::size_t j = 0; j < 4; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < 4; ++i) {
      complex v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
      l(i, j) = v / l(j, j).real();
    }
  }
  return true;
}

double tr_expect(const Matrix4& rho, const Matrix4& op) { return (rho * op).trace().real(); }

Outcome criterion1() {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const TwoQubitState s = random_physical_state();
    worst = std::max(worst, crosscheck(s, uniform(0.0, 4.0 * kPi)));
  }
  return {worst < 1e-12, "max abs error " + fmt(worst) + " over 1000 states"};
}

Outcome criterion2() {
  bool ok = true;
  std::ostringstream detail;
  for (double q : {kPi / 6, kPi / 4, kPi / 3}) {
    const EdgeState e = EdgeState::at(q);
    const auto sigma2 = [&](double s) { return conjunct(e.c1(), 0.0, e.bloch(), {q, {s}}).trajectory.back().y; };
    const double h = 1e-6;
    const double slope = (sigma2(h) - sigma2(-h)) / (2.0 * h);
    const double err = std::abs(slope - std::sin(q));
    const double after = sigma2(1e-3);
    ok = ok && err < 1e-8 && after > 1.0;
    detail << "q=" << fmt(q) << " slope err " << fmt(err) << ", <S2>(1e-3)-1 " << fmt(after - 1.0) << "; ";
  }
  return {ok, detail.str()};
}

Outcome criterion3() {
  double violation = 0.0;
  double deviation = 0.0;
  for (double q : {kPi / 6, kPi / 4, kPi / 3}) {
    const EdgeState e = EdgeState::at(q);
    TwoQubitState state;
    state.a = e.bloch();
    state.t[0][0] = e.c1();
    const Matrix4 rho = density_from_params(state);
    const Matrix4 s2 = kron(pauli(2), Matrix2::identity());
    for (int i = 0; i <= 2000; ++i) {
      const double s = -2.0 * kPi + 4.0 * kPi * i / 2000.0;
      const double closed = evolve_mean_values({state.a, e.c1(), 0.0}, q + s).a.y;
      const double unitary_route = tr_expect(evolve_density(rho, q + s), s2);
      violation = std::max({violation, closed - 1.0, unitary_route - 1.0});
      deviation = std::max({deviation, std::abs(closed - std::cos(s)), std::abs(unitary_route - std::cos(s))});
    }
  }
  return {violation <= 1e-12 && deviation <= 1e-12,
          "max(<S2>-1) " + fmt(violation) + ", max |<S2>-cos s| " + fmt(deviation)};
}

Outcome criterion4() {
  double worst = 0.0;
  double n3_seconds = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double a2 = uniform(-1, 1);
    const double c1 = uniform(-1, 1);
    for (int n = 0; n <= 3; ++n) {
      const double greedy = greedy_extremal_growth(a2, c1, n).magnitudes.back();
      const double law = std::sqrt(a2 * a2 + (n + 1) * c1 * c1);
      const auto start = std::chrono::steady_clock::now();
      const double brute = brute_force_max(a2, c1, n, 128);
      if (n == 3) n3_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      worst = std::max({worst, std::abs(greedy - brute), std::abs(greedy - law)});
    }
  }
  return {worst < 1e-6 && n3_seconds < 60.0,
          "max |greedy - brute| " + fmt(worst) + ", n=3 grid time " + fmt(n3_seconds) + " s"};
}

Outcome criterion5() {
  const auto first = first_unphysical_n(0.6, 0.2);
  const SafeRepetitions safe = max_safe_repetitions(0.6, 0.2);
  const auto growth = greedy_extremal_growth(0.6, 0.2, 16);
  const bool consistent = first && safe.limit == RepetitionLimit::finite && safe.count + 1 == *first &&
                          slipped_domain_check(0.6, 0.2, safe.count).inside &&
                          !slipped_domain_check(0.6, 0.2, safe.count + 1).inside &&
                          growth.magnitudes[15] <= 1.0 + kDomainTol && growth.magnitudes[16] > 1.0 + kDomainTol;
  const bool ok = first && *first == 16 && safe.count == 15 && consistent;
  return {ok, "first_unphysical_n " + (first ? std::to_string(*first) : std::string("none")) +
                  ", max_safe_repetitions " + std::to_string(safe.count) +
                  (consistent ? ", off-by-one consistent" : ", inconsistent")};
}

struct SliceRun {
  std::size_t compared = 0;
  std::size_t excluded = 0;
  std::size_t disagreements = 0;
  std::vector<std::pair<CompatQuery, FeasibilityResult>> inside;
};

SliceRun run_slice_grid() {
  SliceRun run;
  const ExtensionSearchConfig cfg;
  for (const CompatQuery& q : slice_grid(-1.0, 1.0, 41)) {
    const DomainVerdict sup = in_compatibility_domain(q.c1, q.c2, q.a);
    const DomainVerdict slice = compat_slice_check(q.a.y, q.c1);
    const FeasibilityResult found = feasibility_search(q.a, q.c1, q.c2, cfg);
    const DomainVerdict oracle = make_verdict(found.best_min_eigenvalue, kDomainTol);
    if (oracle.inside) run.inside.emplace_back(q, found);
    const double band = 1e-3;
    if (std::abs(sup.margin) < band || std::abs(slice.margin) < band || std::abs(oracle.margin) < band) {
      ++run.excluded;
      continue;
    }
    ++run.compared;
    if (sup.inside != slice.inside || sup.inside != oracle.inside) ++run.disagreements;
  }
  return run;
}

Outcome criterion6(const SliceRun& run) {
  return {run.disagreements == 0 && run.compared > 0,
          std::to_string(run.compared) + " compared, " + std::to_string(run.excluded) + " in band, " +
              std::to_string(run.disagreements) + " disagreements"};
}

Outcome criterion7() {
  int trajectories = 0;
  int counterexamples = 0;
  while (trajectories < 200) {
    const double a2 = uniform(-1, 1);
    const double c1 = uniform(-1, 1);
    if (std::abs(c1) < 0.02) continue;
    // Grow until the magnitude first exceeds 1.
    const int cap = static_cast<int>(std::ceil(2.0 / (c1 * c1))) + 2;
    const auto g = greedy_extremal_growth(a2, c1, cap);
    std::size_t k = 0;
    while (k < g.magnitudes.size() && g.magnitudes[k] <= 1.0) ++k;
    if (k == g.magnitudes.size()) continue;
    ++trajectories;
    const double predecessor = k == 0 ? a2 : g.magnitudes[k - 1];
    const DomainVerdict v = compat_slice_check(predecessor, c1, 0.0);
    if (v.inside) ++counterexamples;
  }
  return {counterexamples == 0,
          std::to_string(counterexamples) + " counterexamples over " + std::to_string(trajectories) + " trajectories"};
}

Outcome criterion8() {
  int passing = 0;
  int failing = 0;
  int passing_bad = 0;
  int failing_bad = 0;
  while (passing < 100 || failing < 100) {
    const double a2 = uniform(-1, 1);
    const double c1 = uniform(-1, 1);
    const std::int64_t n = 1 + static_cast<std::int64_t>(uniform(0, 10));
    const DomainVerdict v = slipped_domain_check(a2, c1, n);
    const double worst = greedy_extremal_growth(a2, c1, static_cast<int>(n)).magnitudes.back();
    if (v.inside && passing < 100) {
      ++passing;
      if (worst > 1.0 + 1e-9) ++passing_bad;
    } else if (!v.inside && failing < 100) {
      ++failing;
      if (!(worst > 1.0)) ++failing_bad;
    }
  }
  return {passing_bad == 0 && failing_bad == 0, std::to_string(passing_bad) + "/100 passing states exceeded 1, " +
                                                    std::to_string(failing_bad) + "/100 failing states stayed <= 1"};
}

Outcome criterion9(const SliceRun& run) {
  std::vector<std::pair<CompatQuery, FeasibilityResult>> checks = run.inside;
  for (const CompatQuery& q : random_queries(50, 9)) {
    FeasibilityResult found = feasibility_search(q.a, q.c1, q.c2);
    if (found.best_min_eigenvalue >= -kDomainTol) checks.emplace_back(q, found);
  }
  const Matrix2 id = Matrix2::identity();
  const Matrix4 x1 = kron(id, pauli(1, Qubit::xi));
  int bad = 0;
  double worst_param = 0.0;
  for (const auto& [q, found] : checks) {
    const Matrix4 rho = density_from_params(found.witness);
    const double err = std::max({std::abs(tr_expect(rho, kron(pauli(1), id)) - q.a.x),
                                 std::abs(tr_expect(rho, kron(pauli(2), id)) - q.a.y),
                                 std::abs(tr_expect(rho, kron(pauli(3), id)) - q.a.z),
                                 std::abs(tr_expect(rho, kron(pauli(1), id) * x1) - q.c1),
                                 std::abs(tr_expect(rho, kron(pauli(2), id) * x1) - q.c2)});
    worst_param = std::max(worst_param, err);
    const bool hermitian_unit_trace = rho.is_hermitian(1e-12) && std::abs(rho.trace() - 1.0) < 1e-12;
    if (err > 1e-10 || !hermitian_unit_trace || !cholesky_succeeds(rho, 1e-9 + 1e-13)) ++bad;
  }
  return {bad == 0 && !checks.empty(), std::to_string(checks.size()) + " witnesses, " + std::to_string(bad) +
                                           " unsound, max parameter error " + fmt(worst_param)};
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion10(const std::string& binary, const std::string& scenario, const fs::path& scratch) {
  std::error_code ec;
  fs::remove_all(scratch, ec);
  for (const char* run : {"first", "second"}) {
    const std::string cmd = "\"" + binary + "\" hazard --scenario \"" + scenario + "\" --out \"" +
                            (scratch / run).string() + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, std::string("CLI run failed: ") + cmd};
  }
  const std::string first = read_all(scratch / "first" / "hazard.csv");
  const std::string second = read_all(scratch / "second" / "hazard.csv");
  const bool identical = !first.empty() && first == second;

  // Rows are q,s,sigma2_exact,sigma2_conjunction,...; check every s = 0 row.
  std::istringstream lines(first);
  std::string line;
  std::getline(lines, line);
  int zero_rows = 0;
  double worst = 0.0;
  while (std::getline(lines, line)) {
    std::vector<double> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() < 4 || cells[1] != 0.0) continue;
    ++zero_rows;
    worst = std::max({worst, std::abs(cells[2] - 1.0), std::abs(cells[3] - 1.0)});
  }
  return {identical && zero_rows > 0 && worst <= 1e-12,
          std::string(identical ? "byte-identical" : "outputs differ") + ", " + std::to_string(zero_rows) +
              " s=0 rows, max |sigma2 - 1| " + fmt(worst)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <mapdomain binary> <hazard scenario> <scratch dir>\n";
    return 1;
  }
  int failures = 0;
  const auto report = [&](int id, const std::function<Outcome()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ") [" << fmt(secs)
              << " s]" << std::endl;
  };

  report(1, criterion1);
  report(2, criterion2);
  report(3, criterion3);
  report(4, criterion4);
  report(5, criterion5);
  SliceRun slice;
  report(6, [&] {
    slice = run_slice_grid();
    return criterion6(slice);
  });
  report(7, criterion7);
  report(8, criterion8);
  report(9, [&] { return criterion9(slice); });
  report(10, [&] { return criterion10(argv[1], argv[2], argv[3]); });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
