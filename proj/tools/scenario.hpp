#pragma once

// Scenario files and the command runner behind the `mapdomain` binary.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mapdomain/pauli.hpp"

namespace mapdomain::cli {

/// Malformed scenario: unknown field, wrong type, or out-of-range value.
class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { evolve, conjunct, hazard, domain_map, growth, slippage, validate };

std::string command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

struct GridAxis {
  std::string axis;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;

  /// count evenly spaced values from start to stop inclusive.
  std::vector<double> values() const;
};

struct StateSpec {
  std::optional<BlochVector> a;
  std::optional<double> q;
  double c1 = 0.0;
  double c2 = 0.0;
};

struct Scenario {
  Command command = Command::evolve;
  StateSpec state;
  std::optional<double> t;
  std::vector<double> steps;
  std::vector<GridAxis> grids;
  std::optional<std::int64_t> n;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::optional<std::string> output;

  const GridAxis* grid(const std::string& axis) const;
};

/// Accepts a JSON number or a string such as "pi/4", "-3*pi/4", "2pi", "0.5".
double parse_angle(const nlohmann::json& value, const std::string& field);

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Header line plus one line per row; LF endings.
std::string to_csv(const CsvTable& table);

/// Writes atomically (temporary file + rename). Throws io_error.
void write_file(const std::filesystem::path& path, const std::string& contents);
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

struct RunResult {
  CsvTable table;
  nlohmann::json summary;
  /// Set when an internal cross-check exceeded its tolerance.
  bool validation_failed = false;
};

/// Executes a validated scenario in memory.
RunResult run_scenario(const Scenario& scenario);

/// Entry point used by main(): parses arguments, runs, writes outputs and
/// returns the process exit status (0 ok, 1 usage/schema/IO, 2 validation).
int run_cli(int argc, char** argv);

}  // namespace mapdomain::cli
