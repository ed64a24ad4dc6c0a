#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "mapdomain/compat_oracle.hpp"
#include "mapdomain/conjunction.hpp"
#include "mapdomain/dynamics.hpp"
#include "mapdomain/reduced_map.hpp"
#include "mapdomain/slippage.hpp"
#include "scenario.hpp"

namespace mapdomain::cli {

namespace {

using nlohmann::json;

// Band around a verdict boundary inside which oracle/closed-form
// disagreements are not counted.
constexpr double kBoundaryBand = 1e-3;

struct InitialState {
  BlochVector a;
  double c1 = 0.0;
  double c2 = 0.0;
};

InitialState resolve_state(const Scenario& sc) {
  if (sc.state.q) {
    const double q = *sc.state.q;
    return {{0.0, std::cos(q), 0.0}, std::sin(q), 0.0};
  }
  return {sc.state.a.value_or(BlochVector{}), sc.state.c1, sc.state.c2};
}

// Slice-only commands take a2 from state.a (which must be (0, a2, 0)) or q.
std::pair<double, double> resolve_slice(const Scenario& sc) {
  const InitialState st = resolve_state(sc);
  if (st.a.x != 0.0 || st.a.z != 0.0 || st.c2 != 0.0) {
    throw schema_error("command " + command_name(sc.command) + " needs a slice state a = [0, a2, 0] with c2 = 0");
  }
  return {st.a.y, st.c1};
}

const GridAxis& require_grid(const Scenario& sc, const std::string& axis) {
  const GridAxis* g = sc.grid(axis);
  if (!g) throw schema_error("command " + command_name(sc.command) + " needs a grid over '" + axis + "'");
  return *g;
}

Cell optional_cell(const std::optional<std::int64_t>& v) {
  return v ? Cell{*v} : Cell{};
}

json optional_json(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

json repetitions_json(const SafeRepetitions& r) {
  switch (r.limit) {
    case RepetitionLimit::none:
      return nullptr;
    case RepetitionLimit::unbounded:
      return "unbounded";
    case RepetitionLimit::finite:
      return r.count;
  }
  return nullptr;
}

ExtensionSearchConfig search_config(const Scenario& sc) {
  ExtensionSearchConfig cfg;
  cfg.seed = sc.seed;
  return cfg;
}

RunResult run_evolve(const Scenario& sc) {
  const InitialState st = resolve_state(sc);
  const GridAxis& times = require_grid(sc, "t");
  TwoQubitState two;
  two.a = st.a;
  two.t[0][0] = st.c1;
  two.t[1][0] = st.c2;
  const MeanValueState initial{st.a, st.c1, st.c2};

  RunResult out;
  out.table.header = {"t", "a1", "a2", "a3", "c1", "c2", "norm", "margin", "crosscheck"};
  double worst_check = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::int64_t unphysical = 0;
  for (double t : times.values()) {
    const MeanValueState m = evolve_mean_values(initial, t);
    const double norm = m.a.norm();
    const double check = crosscheck(two, t);
    worst_check = std::max(worst_check, check);
    min_margin = std::min(min_margin, 1.0 - norm);
    if (norm > 1.0 + sc.tol) ++unphysical;
    out.table.rows.push_back({t, m.a.x, m.a.y, m.a.z, m.c1, m.c2, norm, 1.0 - norm, check});
  }
  out.summary = {{"command", "evolve"},
                 {"rows", out.table.rows.size()},
                 {"max_crosscheck", worst_check},
                 {"min_margin", min_margin},
                 {"unphysical_rows", unphysical},
                 {"compatibility", {{"inside", in_compatibility_domain(st.c1, st.c2, st.a, sc.tol).inside},
                                    {"margin", in_compatibility_domain(st.c1, st.c2, st.a, sc.tol).margin}}}};
  return out;
}

RunResult run_conjunct(const Scenario& sc) {
  const InitialState st = resolve_state(sc);
  const double t = sc.t.value_or(sc.state.q.value_or(0.0));
  const MeanValueState initial{st.a, st.c1, st.c2};

  RunResult out;
  out.table.header = {"step",         "s",           "elapsed",           "sigma1_exact",       "sigma2_exact",
                      "sigma3_exact", "norm_exact",  "sigma1_conjunction", "sigma2_conjunction", "sigma3_conjunction",
                      "norm_conjunction", "margin_exact", "margin_conjunction"};
  const auto push_row = [&](std::int64_t step, double leg, double elapsed, const MeanValueState& exact,
                            const BlochVector& conj) {
    const double ne = exact.a.norm();
    const double nc = conj.norm();
    out.table.rows.push_back(
        {step, leg, elapsed, exact.a.x, exact.a.y, exact.a.z, ne, conj.x, conj.y, conj.z, nc, 1.0 - ne, 1.0 - nc});
  };

  if (const GridAxis* s_grid = sc.grid("s")) {
    if (!sc.steps.empty()) throw schema_error("conjunct takes either schedule.steps or a grid over 's', not both");
    double max_sigma2 = -std::numeric_limits<double>::infinity();
    double max_norm = 0.0;
    std::int64_t unphysical = 0;
    json first_bad = nullptr;
    for (double s : s_grid->values()) {
      const ConjunctionSchedule sched{t, {s}};
      const HazardReport report = conjunct(st.c1, st.c2, st.a, sched, sc.tol);
      const auto exact = exact_trajectory(initial, sched);
      push_row(1, s, t + s, exact.back(), report.trajectory.back());
      max_sigma2 = std::max(max_sigma2, report.trajectory.back().y);
      max_norm = std::max(max_norm, report.magnitudes.back());
      if (report.magnitudes.back() > 1.0 + sc.tol) {
        ++unphysical;
        if (first_bad.is_null()) first_bad = s;
      }
    }
    out.summary = {{"command", "conjunct"},      {"mode", "s-sweep"},          {"t", t},
                   {"max_sigma2_conjunction", max_sigma2}, {"max_norm_conjunction", max_norm},
                   {"worst_margin", 1.0 - max_norm}, {"unphysical_rows", unphysical}, {"first_unphysical_s", first_bad}};
    return out;
  }

  const ConjunctionSchedule sched{t, sc.steps};
  const HazardReport report = conjunct(st.c1, st.c2, st.a, sched, sc.tol);
  const auto exact = exact_trajectory(initial, sched);
  double elapsed = 0.0;
  for (std::size_t k = 0; k <= sched.n(); ++k) {
    elapsed += sched.leg(k);
    push_row(static_cast<std::int64_t>(k), sched.leg(k), elapsed, exact[k], report.trajectory[k]);
  }
  json first = report.first_unphysical_step ? json(*report.first_unphysical_step) : json(nullptr);
  out.summary = {{"command", "conjunct"},
                 {"mode", "trajectory"},
                 {"magnitudes", report.magnitudes},
                 {"first_unphysical_step", first},
                 {"worst_margin", report.worst_margin},
                 {"initial_compatibility_margin", in_compatibility_domain(st.c1, st.c2, st.a, sc.tol).margin}};
  return out;
}

RunResult run_hazard(const Scenario& sc) {
  std::vector<double> qs;
  if (const GridAxis* q_grid = sc.grid("q")) {
    if (sc.state.q) throw schema_error("hazard takes either state.q or a grid over 'q', not both");
    qs = q_grid->values();
  } else if (sc.state.q) {
    qs = {*sc.state.q};
  } else {
    throw schema_error("hazard needs state.q or a grid over 'q'");
  }
  const std::vector<double> ss = require_grid(sc, "s").values();

  RunResult out;
  out.table.header = {"q", "s", "sigma2_exact", "sigma2_conjunction", "margin_exact", "margin_conjunction"};
  json per_q = json::array();
  std::int64_t unphysical = 0;
  double max_exact_violation = 0.0;
  for (double q : qs) {
    const double a2 = std::cos(q);
    const double c1 = std::sin(q);
    const MeanValueState edge{{0.0, a2, 0.0}, c1, 0.0};
    double max_conj = -std::numeric_limits<double>::infinity();
    for (double s : ss) {
      const MeanValueState exact = evolve_mean_values(edge, q + s);
      const HazardReport report = conjunct(c1, 0.0, edge.a, ConjunctionSchedule{q, {s}}, sc.tol);
      const double conj = report.trajectory.back().y;
      const double margin_exact = 1.0 - exact.a.norm();
      const double margin_conj = 1.0 - report.magnitudes.back();
      max_conj = std::max(max_conj, conj);
      max_exact_violation = std::max(max_exact_violation, -margin_exact);
      if (margin_conj < -sc.tol) ++unphysical;
      out.table.rows.push_back({q, s, exact.a.y, conj, margin_exact, margin_conj});
    }
    per_q.push_back({{"q", q},
                     {"slope_at_join", hazard_slope_at_join(q)},
                     {"onset_interval_end", onset_interval_end(q)},
                     {"max_sigma2_conjunction", max_conj}});
  }
  out.summary = {{"command", "hazard"},
                 {"rows", out.table.rows.size()},
                 {"unphysical_rows", unphysical},
                 {"max_exact_violation", max_exact_violation},
                 {"per_q", per_q}};
  return out;
}

RunResult run_growth(const Scenario& sc) {
  const auto [a2, c1] = resolve_slice(sc);
  const auto first = first_unphysical_n(a2, c1, sc.tol);
  std::int64_t n = sc.n.value_or(first ? std::min<std::int64_t>(*first, 10'000) : 10);
  if (n > 1'000'000) throw schema_error("'n' is too large for a growth table (max 1000000)");
  const GrowthResult growth = greedy_extremal_growth(a2, c1, static_cast<int>(n));

  RunResult out;
  out.table.header = {"k", "duration", "magnitude", "predicted", "margin", "predecessor_compatible",
                      "first_unphysical_n"};
  double previous = std::abs(a2);
  for (std::size_t k = 0; k < growth.magnitudes.size(); ++k) {
    const double m = growth.magnitudes[k];
    const double predicted = std::sqrt(a2 * a2 + static_cast<double>(k + 1) * c1 * c1);
    const bool predecessor_ok = compat_slice_check(previous, c1, sc.tol).inside;
    out.table.rows.push_back({static_cast<std::int64_t>(k), growth.schedule.leg(k), m, predicted, 1.0 - m,
                              predecessor_ok, optional_cell(first)});
    previous = m;
  }
  out.summary = {{"command", "growth"},
                 {"a2", a2},
                 {"c1", c1},
                 {"n", n},
                 {"first_unphysical_n", optional_json(first)},
                 {"max_safe_repetitions", repetitions_json(max_safe_repetitions(a2, c1, sc.tol))},
                 {"final_magnitude", growth.magnitudes.back()}};
  return out;
}

RunResult run_domain_map(const Scenario& sc) {
  const std::vector<double> a2s = require_grid(sc, "a2").values();
  const std::vector<double> c1s = require_grid(sc, "c1").values();
  const ExtensionSearchConfig cfg = search_config(sc);

  RunResult out;
  out.table.header = {"a2",          "c1",         "margin_sup",    "margin_slice", "margin_oracle",
                      "inside_sup", "inside_slice", "inside_oracle", "in_band",      "agree"};
  std::int64_t disagreements = 0;
  std::int64_t in_band = 0;
  for (double a2 : a2s) {
    for (double c1 : c1s) {
      const BlochVector a{0.0, a2, 0.0};
      const DomainVerdict sup = in_compatibility_domain(c1, 0.0, a, sc.tol);
      const DomainVerdict slice = compat_slice_check(a2, c1, sc.tol);
      const DomainVerdict oracle = is_compatible_oracle(a, c1, 0.0, cfg, sc.tol);
      const bool band = std::abs(sup.margin) < kBoundaryBand || std::abs(oracle.margin) < kBoundaryBand;
      const bool agree = sup.inside == slice.inside && sup.inside == oracle.inside;
      if (band) {
        ++in_band;
      } else if (!agree) {
        ++disagreements;
      }
      out.table.rows.push_back(
          {a2, c1, sup.margin, slice.margin, oracle.margin, sup.inside, slice.inside, oracle.inside, band, agree});
    }
  }
  out.validation_failed = disagreements > 0;
  out.summary = {{"command", "domain-map"},
                 {"points", out.table.rows.size()},
                 {"in_band", in_band},
                 {"disagreements", disagreements},
                 {"band", kBoundaryBand},
                 {"seed", sc.seed}};
  return out;
}

RunResult run_slippage(const Scenario& sc) {
  const std::int64_t max_n = sc.n.value_or(1);
  if (max_n < 1) throw schema_error("slippage needs n >= 1");
  std::vector<std::pair<double, double>> points;
  if (sc.grid("a2") || sc.grid("c1")) {
    for (double a2 : require_grid(sc, "a2").values())
      for (double c1 : require_grid(sc, "c1").values()) points.emplace_back(a2, c1);
  } else {
    points.push_back(resolve_slice(sc));
  }

  RunResult out;
  out.table.header = {"n", "a2", "c1", "inside", "margin", "slipped_a2", "max_safe_repetitions"};
  json per_n = json::array();
  for (std::int64_t n = 1; n <= max_n; ++n) {
    std::int64_t inside = 0;
    for (const auto& [a2, c1] : points) {
      const DomainVerdict v = slipped_domain_check(a2, c1, n, sc.tol);
      const BlochVector slipped = slip_state({0.0, a2, 0.0}, c1, n);
      const SafeRepetitions safe = max_safe_repetitions(a2, c1, sc.tol);
      Cell safe_cell;
      if (safe.limit == RepetitionLimit::finite) safe_cell = safe.count;
      if (safe.limit == RepetitionLimit::unbounded) safe_cell = std::string("unbounded");
      if (v.inside) ++inside;
      out.table.rows.push_back({n, a2, c1, v.inside, v.margin, slipped.y, safe_cell});
    }
    per_n.push_back({{"n", n}, {"inside", inside}, {"points", points.size()}});
  }
  out.summary = {{"command", "slippage"}, {"per_n", per_n}};
  return out;
}

struct SuiteTally {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  double worst = 0.0;

  void record(double error, double limit) {
    ++checks;
    worst = std::max(worst, error);
    if (!(error <= limit)) ++failures;
  }
};

RunResult run_validate(const Scenario& sc) {
  SeededRandom rng(sc.seed);
  std::vector<SuiteTally> suites;

  SuiteTally dyn{"dynamics_crosscheck"};
  for (int i = 0; i < 1000; ++i) {
    TwoQubitState s;
    s.a = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    s.b = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    for (auto& row : s.t)
      for (auto& v : row) v = rng.uniform(-1, 1);
    dyn.record(crosscheck(s, rng.uniform(0.0, 4.0 * std::numbers::pi)), 1e-12);
  }
  suites.push_back(dyn);

  SuiteTally sup{"sup_closed_form_vs_search"};
  for (int i = 0; i < 200; ++i) {
    const BlochVector a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double c1 = rng.uniform(-1, 1);
    const double c2 = rng.uniform(-1, 1);
    const double closed = sup_norm_over_time(c1, c2, a).supremum;
    const double searched = sup_norm_by_search(c1, c2, a).supremum;
    sup.record(std::abs(closed - searched) / std::max(closed, 1e-300), 1e-9);
  }
  suites.push_back(sup);

  SuiteTally slice{"slice_verdicts"};
  for (const auto& q : slice_grid(-1.2, 1.2, 201)) {
    const DomainVerdict general = in_compatibility_domain(q.c1, 0.0, q.a, sc.tol);
    const DomainVerdict analytic = compat_slice_check(q.a.y, q.c1, sc.tol);
    slice.record(general.inside == analytic.inside ? 0.0 : 1.0, 0.0);
  }
  suites.push_back(slice);

  SuiteTally growth{"greedy_vs_brute_force"};
  for (int i = 0; i < 6; ++i) {
    const double a2 = rng.uniform(-1, 1);
    const double c1 = rng.uniform(-0.6, 0.6);
    for (int n = 0; n <= 2; ++n) {
      const double greedy = greedy_extremal_growth(a2, c1, n).magnitudes.back();
      growth.record(std::abs(greedy - brute_force_max(a2, c1, n, 64)), 1e-6);
    }
  }
  suites.push_back(growth);

  CrossValidationSpec slice_spec;
  const GridAxis* g = sc.grid("a2");
  slice_spec.points = g ? slice_grid(g->start, g->stop, g->count) : slice_grid(-1.0, 1.0, 9);
  slice_spec.search = search_config(sc);
  slice_spec.tol = sc.tol;
  const AgreementReport slice_report = cross_validate(slice_spec);
  suites.push_back({"oracle_slice", static_cast<std::int64_t>(slice_report.compared),
                    static_cast<std::int64_t>(slice_report.disagreements.size()), slice_report.worst_margin_gap});

  CrossValidationSpec general_spec;
  general_spec.points = random_queries(static_cast<std::size_t>(sc.n.value_or(10)), sc.seed + 1);
  general_spec.search = search_config(sc);
  general_spec.tol = sc.tol;
  const AgreementReport general_report = cross_validate(general_spec);
  suites.push_back({"oracle_general", static_cast<std::int64_t>(general_report.compared),
                    static_cast<std::int64_t>(general_report.disagreements.size()), general_report.worst_margin_gap});

  RunResult out;
  out.table.header = {"suite", "checks", "failures", "worst_error"};
  json summary_suites = json::array();
  std::int64_t total_failures = 0;
  for (const auto& s : suites) {
    out.table.rows.push_back({s.name, s.checks, s.failures, s.worst});
    summary_suites.push_back({{"suite", s.name}, {"checks", s.checks}, {"failures", s.failures}, {"worst_error", s.worst}});
    total_failures += s.failures;
  }
  json logged = json::array();
  for (const auto* report : {&slice_report, &general_report}) {
    for (const auto& d : report->disagreements) {
      logged.push_back({{"a", {d.query.a.x, d.query.a.y, d.query.a.z}},
                        {"c1", d.query.c1},
                        {"c2", d.query.c2},
                        {"sup_margin", d.sup_margin},
                        {"oracle_margin", d.oracle_margin}});
    }
  }
  out.validation_failed = total_failures > 0;
  out.summary = {{"command", "validate"},
                 {"seed", sc.seed},
                 {"suites", summary_suites},
                 {"failures", total_failures},
                 {"oracle_disagreements", logged},
                 {"passed", total_failures == 0}};
  return out;
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
  switch (sc.command) {
    case Command::evolve:
      return run_evolve(sc);
    case Command::conjunct:
      return run_conjunct(sc);
    case Command::hazard:
      return run_hazard(sc);
    case Command::growth:
      return run_growth(sc);
    case Command::domain_map:
      return run_domain_map(sc);
    case Command::slippage:
      return run_slippage(sc);
    case Command::validate:
      return run_validate(sc);
  }
  throw schema_error("unhandled command");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Markov map-conjunction hazard laboratory for one qubit of an interacting pair"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<CLI::App*> subs;
  for (Command c : {Command::evolve, Command::conjunct, Command::hazard, Command::domain_map, Command::growth,
                    Command::slippage, Command::validate}) {
    CLI::App* sub = app.add_subcommand(command_name(c), "Run a '" + command_name(c) + "' scenario");
    sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides the scenario's 'output')");
    sub->add_option("--seed", seed, "Seed for randomized searches (overrides the scenario)");
    sub->add_option("--tol", tol, "Boundary tolerance (overrides the scenario)")->check(CLI::NonNegativeNumber);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    Scenario sc = load_scenario(scenario_path);
    if (command_name(sc.command) != chosen->get_name()) {
      throw schema_error("scenario command '" + command_name(sc.command) + "' does not match subcommand '" +
                         chosen->get_name() + "'");
    }
    if (chosen->count("--seed")) sc.seed = seed;
    if (chosen->count("--tol")) sc.tol = tol;
    std::filesystem::path dir = chosen->count("--out") ? out_dir : sc.output.value_or(".");

    const RunResult result = run_scenario(sc);
    const std::string base = command_name(sc.command);
    emit_csv(result.table, dir / (base + ".csv"));
    write_file(dir / (base + "_summary.json"), result.summary.dump(2) + "\n");
    if (result.validation_failed) {
      std::cerr << "validation failed: see " << (dir / (base + "_summary.json")).string() << "\n";
      return 2;
    }
    return 0;
  } catch (const schema_error& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 1;
  } catch (const io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid scenario value: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mapdomain::cli
