#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "growth/fitting.hpp"
#include "growth/forecast.hpp"
#include "growth/rates.hpp"
#include "growth/series.hpp"

namespace growth::cli {

enum class Command { Rates, Fit, Project, Compare, Verify };
enum class OutputFormat { Csv, Json };
enum class RateUnit { Fraction, Percent };

struct RunConfig {
  std::string input;
  Command command = Command::Rates;
  SmootherConfig smoother{};
  FitSpace space = FitSpace::RateVsTime;
  bool space_given = false;
  std::optional<double> window_start;
  std::optional<double> window_end;
  /// Anchor year; the value is looked up in the data when not given.
  /// Both absent means "last datum".
  std::optional<double> anchor_year;
  std::optional<double> anchor_value;
  std::optional<double> grid_start;
  std::optional<double> grid_end;
  double grid_step = 1.0;
  OutputFormat format = OutputFormat::Csv;
  RateUnit rate_unit = RateUnit::Fraction;
  double guard_fraction = kDefaultGuardFraction;
  /// Scenario models in record text form (`kind:name=value,...`).
  std::vector<std::string> models;
  /// Output file; empty writes to the given stream.
  std::string output;
};

/// Two-column CSV (year, value), optional header row, any row order.
/// Errors: FileNotFound, ParseError (row = 1-based line number),
/// DuplicateYear, TooFewRows, NonPositiveValue.
TimeSeries ingest_csv(const std::string& path);
TimeSeries parse_csv(std::istream& in);

/// Locale-independent number text: shortest round-trip form, scientific
/// with an explicit exponent sign for |x| >= 1e6.
std::string format_number(double x);

/// Builds a RunConfig from command-line arguments (CLI11). Throws
/// GrowthError(InvalidConfig) on bad flags; `help` is set when --help was
/// requested, with the usage text in `help_text`.
struct ParsedArgs {
  RunConfig config;
  bool help = false;
  std::string help_text;
};
ParsedArgs parse_args(int argc, const char* const* argv);

/// Runs one command. Writes the result document to `out` (or
/// config.output) and a single diagnostic line to `err` on failure.
/// Returns 0 on success, 1 on any error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace growth::cli
