#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

namespace mapdomain::cli {

namespace {

using nlohmann::json;

void require_known_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw schema_error("unknown field '" + key + "' in " + where);
  }
}

double require_number(const json& value, const std::string& field) {
  if (!value.is_number()) throw schema_error("field '" + field + "' must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw schema_error("field '" + field + "' must be finite");
  return v;
}

std::int64_t require_integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) throw schema_error("field '" + field + "' must be an integer");
  return value.get<std::int64_t>();
}

GridAxis parse_grid(const json& g, const std::string& where) {
  if (!g.is_object()) throw schema_error(where + " must be an object");
  require_known_keys(g, {"axis", "start", "stop", "count"}, where);
  for (const char* key : {"axis", "start", "stop", "count"}) {
    if (!g.contains(key)) throw schema_error(where + " is missing '" + key + "'");
  }
  GridAxis axis;
  if (!g["axis"].is_string()) throw schema_error(where + ".axis must be a string");
  axis.axis = g["axis"].get<std::string>();
  axis.start = parse_angle(g["start"], where + ".start");
  axis.stop = parse_angle(g["stop"], where + ".stop");
  const std::int64_t count = require_integer(g["count"], where + ".count");
  if (count < 2 || count > 10'000'000) throw schema_error(where + ".count must be at least 2");
  axis.count = static_cast<int>(count);
  if (!(axis.start < axis.stop)) throw schema_error(where + " needs start < stop");
  return axis;
}

std::set<std::string> allowed_axes(Command c) {
  switch (c) {
    case Command::evolve:
      return {"t"};
    case Command::conjunct:
      return {"s"};
    case Command::hazard:
      return {"q", "s"};
    case Command::domain_map:
    case Command::slippage:
      return {"a2", "c1"};
    case Command::growth:
      return {};
    case Command::validate:
      return {"a2"};
  }
  return {};
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::evolve:
      return "evolve";
    case Command::conjunct:
      return "conjunct";
    case Command::hazard:
      return "hazard";
    case Command::domain_map:
      return "domain-map";
    case Command::growth:
      return "growth";
    case Command::slippage:
      return "slippage";
    case Command::validate:
      return "validate";
  }
  return "unknown";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::evolve, Command::conjunct, Command::hazard, Command::domain_map, Command::growth,
                    Command::slippage, Command::validate}) {
    if (command_name(c) == name) return c;
  }
  return std::nullopt;
}

std::vector<double> GridAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i * step;
  out.back() = stop;
  return out;
}

const GridAxis* Scenario::grid(const std::string& axis) const {
  for (const auto& g : grids) {
    if (g.axis == axis) return &g;
  }
  return nullptr;
}

double parse_angle(const json& value, const std::string& field) {
  if (value.is_number()) return require_number(value, field);
  if (!value.is_string()) throw schema_error("field '" + field + "' must be a number or an angle string like \"pi/4\"");
  const std::string text = value.get<std::string>();
  static const std::regex pattern(R"(^\s*([+-])?\s*(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\s*(\*?\s*pi)?\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern) || (!m[2].matched && !m[3].matched)) {
    throw schema_error("field '" + field + "' has unparseable angle \"" + text + "\"");
  }
  if (m[3].matched && m[3].str().find('*') != std::string::npos && !m[2].matched) {
    throw schema_error("field '" + field + "' has unparseable angle \"" + text + "\"");
  }
  double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
  if (m[3].matched) v *= std::numbers::pi;
  if (m[4].matched) {
    const double denominator = std::stod(m[4].str());
    if (denominator == 0.0) throw schema_error("field '" + field + "' divides by zero");
    v /= denominator;
  }
  if (m[1].matched && m[1].str() == "-") v = -v;
  return v;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw schema_error("scenario must be a JSON object");
  require_known_keys(doc, {"command", "state", "schedule", "grid", "n", "tol", "seed", "output"}, "scenario");
  if (!doc.contains("command") || !doc["command"].is_string()) throw schema_error("'command' must be a string");
  const auto command = parse_command(doc["command"].get<std::string>());
  if (!command) throw schema_error("unknown command '" + doc["command"].get<std::string>() + "'");

  Scenario sc;
  sc.command = *command;

  if (doc.contains("state")) {
    const json& st = doc["state"];
    if (!st.is_object()) throw schema_error("'state' must be an object");
    require_known_keys(st, {"a", "q", "c1", "c2"}, "state");
    if (st.contains("a") && !st["a"].is_null()) {
      const json& a = st["a"];
      if (!a.is_array() || a.size() != 3) throw schema_error("state.a must be an array of three numbers");
      sc.state.a = BlochVector{require_number(a[0], "state.a[0]"), require_number(a[1], "state.a[1]"),
                               require_number(a[2], "state.a[2]")};
    }
    if (st.contains("q") && !st["q"].is_null()) sc.state.q = parse_angle(st["q"], "state.q");
    if (st.contains("c1")) sc.state.c1 = require_number(st["c1"], "state.c1");
    if (st.contains("c2")) sc.state.c2 = require_number(st["c2"], "state.c2");
    if (sc.state.q && sc.state.a) throw schema_error("state gives both 'a' and 'q'; use one");
    if (sc.state.q && (st.contains("c1") || st.contains("c2"))) {
      throw schema_error("state.q fixes c1 = sin q and c2 = 0; drop 'c1'/'c2'");
    }
  }

  if (doc.contains("schedule")) {
    const json& sched = doc["schedule"];
    if (!sched.is_object()) throw schema_error("'schedule' must be an object");
    require_known_keys(sched, {"t", "steps"}, "schedule");
    if (sched.contains("t")) sc.t = parse_angle(sched["t"], "schedule.t");
    if (sched.contains("steps")) {
      if (!sched["steps"].is_array()) throw schema_error("schedule.steps must be an array");
      for (std::size_t i = 0; i < sched["steps"].size(); ++i) {
        sc.steps.push_back(parse_angle(sched["steps"][i], "schedule.steps[" + std::to_string(i) + "]"));
      }
    }
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (g.is_array()) {
      for (std::size_t i = 0; i < g.size(); ++i) sc.grids.push_back(parse_grid(g[i], "grid[" + std::to_string(i) + "]"));
    } else {
      sc.grids.push_back(parse_grid(g, "grid"));
    }
    const auto allowed = allowed_axes(sc.command);
    std::set<std::string> seen;
    for (const auto& axis : sc.grids) {
      if (!allowed.count(axis.axis)) {
        throw schema_error("grid axis '" + axis.axis + "' is not used by command " + command_name(sc.command));
      }
      if (!seen.insert(axis.axis).second) throw schema_error("grid axis '" + axis.axis + "' given twice");
    }
  }

  if (doc.contains("n")) {
    sc.n = require_integer(doc["n"], "n");
    if (*sc.n < 0) throw schema_error("'n' must be non-negative");
  }
  if (doc.contains("tol")) {
    sc.tol = require_number(doc["tol"], "tol");
    if (sc.tol < 0.0) throw schema_error("'tol' must be non-negative");
  }
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      throw schema_error("'seed' must be a non-negative integer");
    }
    sc.seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw schema_error("'output' must be a string");
    sc.output = doc["output"].get<std::string>();
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  const auto write_row = [&](const auto& cells, auto&& render) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << render(cells[i]);
    }
    out << '\n';
  };
  write_row(table.header, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) {
    write_row(row, [](const Cell& cell) {
      return std::visit(
          [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              return "";
            } else if constexpr (std::is_same_v<T, double>) {
              return format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              return std::to_string(v);
            } else {
              return v;
            }
          },
          cell);
    });
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw io_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw io_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw io_error("cannot move output into place at " + path.string());
  }
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path) { write_file(path, to_csv(table)); }

}  // namespace mapdomain::cli
