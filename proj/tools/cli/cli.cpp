#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string_view>
#include <system_error>

#include "growth/error.hpp"
#include "growth/model_record.hpp"
#include "growth/oracle.hpp"

namespace growth::cli {

namespace {

constexpr std::string_view kModule = "cli";

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Text helpers

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void dump_json(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += Json(it.key()).dump();
        out += ": ";
        dump_json(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_json(v, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

// ---------------------------------------------------------------------------
// Names

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Rates: return "rates";
    case Command::Fit: return "fit";
    case Command::Project: return "project";
    case Command::Compare: return "compare";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view s) {
  for (auto c : {Command::Rates, Command::Fit, Command::Project, Command::Compare, Command::Verify}) {
    if (command_name(c) == s) return c;
  }
  return std::nullopt;
}

double rate_out(const RunConfig& cfg, double r) {
  return cfg.rate_unit == RateUnit::Percent ? r * 100.0 : r;
}

[[noreturn]] void config_error(const std::string& what) {
  throw GrowthError(Errc::InvalidConfig, kModule, what);
}

// ---------------------------------------------------------------------------
// Shared command pieces

struct Anchor {
  double year;
  double value;
};

Anchor resolve_anchor(const RunConfig& cfg, const TimeSeries& ts) {
  if (cfg.anchor_value && !cfg.anchor_year) config_error("--anchor-value needs --anchor-year");
  if (cfg.anchor_year && cfg.anchor_value) return {*cfg.anchor_year, *cfg.anchor_value};
  if (cfg.anchor_year) {
    const auto t = ts.times();
    const auto it = std::find(t.begin(), t.end(), *cfg.anchor_year);
    if (it == t.end()) {
      config_error("anchor year " + format_number(*cfg.anchor_year) +
                   " has no datum; pass --anchor-value to anchor off the data");
    }
    return {*it, ts.value(static_cast<std::size_t>(it - t.begin()))};
  }
  return {ts.times().back(), ts.values().back()};
}

FitWindow resolve_window(const RunConfig& cfg, const TimeSeries& ts) {
  FitWindow w{cfg.window_start.value_or(ts.times().front()),
              cfg.window_end.value_or(ts.times().back())};
  validate(w);
  return w;
}

FitResult fit_series(const RunConfig& cfg, const TimeSeries& ts) {
  const FitWindow w = resolve_window(cfg, ts);
  switch (cfg.space) {
    case FitSpace::LogSizeVsTime: return fit_exponential(ts, w);
    case FitSpace::ReciprocalSizeVsTime: return fit_hyperbolic(ts, w);
    default: break;
  }
  const RateSeries rs = smoothed_rates(ts, cfg.smoother);
  switch (cfg.space) {
    case FitSpace::RateVsTime: return fit_rate_time(rs, w);
    case FitSpace::RateVsSize: return fit_rate_size(rs, w);
    case FitSpace::ReciprocalRateVsTime: return fit_reciprocal_rate(rs, w);
    case FitSpace::LogRateVsTime: return fit_log_rate(rs, w);
    default: break;
  }
  config_error("unsupported fit space");
}

Json parameters_json(const ModelRecord& rec) {
  Json p = Json::object();
  for (const auto& [k, v] : rec.parameters) p[k] = v;
  return p;
}

Json diagnostics_json(const ModelDiagnostics& d) {
  Json j = Json::object();
  if (d.singularity_time) j["singularity_time"] = *d.singularity_time;
  if (d.extremum) {
    Json e = Json::object();
    e["time"] = d.extremum->time;
    if (d.extremum->size) e["size"] = *d.extremum->size;
    j["extremum"] = e;
  }
  if (d.size_limit) j["size_limit"] = *d.size_limit;
  if (d.reciprocal_limit) j["reciprocal_limit"] = *d.reciprocal_limit;
  return j;
}

void diagnostics_rows(const ModelDiagnostics& d, std::vector<std::pair<std::string, std::string>>& rows) {
  if (d.singularity_time) rows.emplace_back("diagnostics.singularity_time", format_number(*d.singularity_time));
  if (d.extremum) {
    rows.emplace_back("diagnostics.extremum.time", format_number(d.extremum->time));
    if (d.extremum->size) rows.emplace_back("diagnostics.extremum.size", format_number(*d.extremum->size));
  }
  if (d.size_limit) rows.emplace_back("diagnostics.size_limit", format_number(*d.size_limit));
  if (d.reciprocal_limit) rows.emplace_back("diagnostics.reciprocal_limit", format_number(*d.reciprocal_limit));
}

std::vector<GrowthModel> scenario_models(const RunConfig& cfg, const std::optional<TimeSeries>& ts) {
  std::vector<GrowthModel> models;
  for (const auto& text : cfg.models) {
    GrowthModel m = from_record(parse_record(text));
    if (!m.is_normalized()) {
      if (!ts) config_error("model '" + text + "' has no C; supply --input or an anchor");
      const Anchor a = resolve_anchor(cfg, *ts);
      m = normalize(m, a.year, a.value);
    }
    models.push_back(std::move(m));
  }
  const bool want_fit = models.empty() || (cfg.command == Command::Compare && cfg.space_given);
  if (want_fit) {
    if (!ts) config_error("no --model given and no --input to fit");
    const FitResult fr = fit_series(cfg, *ts);
    GrowthModel m = fr.model;
    if (!m.is_normalized()) {
      const Anchor a = resolve_anchor(cfg, *ts);
      m = normalize(m, a.year, a.value);
    }
    models.push_back(std::move(m));
  }
  return models;
}

std::vector<double> resolve_grid(const RunConfig& cfg, const std::optional<TimeSeries>& ts) {
  const double start = cfg.grid_start ? *cfg.grid_start : (ts ? ts->times().back() : 2014.0);
  const double end = cfg.grid_end.value_or(start + 100.0);
  return make_grid(start, end, cfg.grid_step);
}

// ---------------------------------------------------------------------------
// Output document

struct Output {
  std::string csv;
  Json results = Json::array();
};

Json config_echo(const RunConfig& cfg) {
  Json c = Json::object();
  c["command"] = command_name(cfg.command);
  c["input"] = cfg.input;
  c["space"] = space_name(cfg.space);
  c["smoother_window"] = cfg.smoother.window;
  c["smoother_degree"] = cfg.smoother.degree;
  if (cfg.window_start) c["window_start"] = *cfg.window_start;
  if (cfg.window_end) c["window_end"] = *cfg.window_end;
  if (cfg.anchor_year) c["anchor_year"] = *cfg.anchor_year;
  else c["anchor"] = "last-datum";
  if (cfg.anchor_value) c["anchor_value"] = *cfg.anchor_value;
  if (cfg.grid_start) c["grid_start"] = *cfg.grid_start;
  if (cfg.grid_end) c["grid_end"] = *cfg.grid_end;
  c["grid_step"] = cfg.grid_step;
  c["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
  c["rate_unit"] = cfg.rate_unit == RateUnit::Fraction ? "fraction" : "percent";
  c["guard_fraction"] = cfg.guard_fraction;
  c["models"] = cfg.models;
  return c;
}

void run_rates(const RunConfig& cfg, const TimeSeries& ts, Output& out) {
  const RateSeries direct = direct_rates(ts);
  const RateSeries smooth = smoothed_rates(ts, cfg.smoother);
  std::ostringstream csv;
  csv << "year,direct_rate,smoothed_rate\n";
  Json rows = Json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Json row = Json::object();
    row["year"] = ts.time(i);
    csv << format_number(ts.time(i)) << ',';
    if (i > 0) {
      const double d = rate_out(cfg, direct.rates[i - 1]);
      csv << format_number(d);
      row["direct_rate"] = d;
    } else {
      row["direct_rate"] = nullptr;
    }
    const double s = rate_out(cfg, smooth.rates[i]);
    csv << ',' << format_number(s) << '\n';
    row["smoothed_rate"] = s;
    rows.push_back(std::move(row));
  }
  out.csv = csv.str();
  Json r = Json::object();
  r["rows"] = std::move(rows);
  out.results.push_back(std::move(r));
}

void run_fit(const RunConfig& cfg, const TimeSeries& ts, Output& out) {
  const FitResult fr = fit_series(cfg, ts);
  GrowthModel model = fr.model;
  if (!model.is_normalized()) {
    const Anchor a = resolve_anchor(cfg, ts);
    model = normalize(model, a.year, a.value);
  }
  const ModelRecord rec = to_record(model);
  const ModelDiagnostics diag = diagnostics(model);

  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("kind", rec.kind);
  rows.emplace_back("space", std::string(space_name(fr.space)));
  for (const auto& [k, v] : rec.parameters) rows.emplace_back("param." + k, format_number(v));
  rows.emplace_back("line.a", format_number(fr.line.intercept));
  rows.emplace_back("line.b", format_number(fr.line.slope));
  rows.emplace_back("line.rss", format_number(fr.line.rss));
  rows.emplace_back("line.n", std::to_string(fr.line.n));
  rows.emplace_back("window.t_start", format_number(fr.window.t_start));
  rows.emplace_back("window.t_end", format_number(fr.window.t_end));
  if (fr.through_origin) {
    rows.emplace_back("through_origin.b", format_number(fr.through_origin->slope));
    rows.emplace_back("through_origin.rss", format_number(fr.through_origin->rss));
    rows.emplace_back("intercept_negligible", fr.intercept_negligible ? "true" : "false");
  }
  diagnostics_rows(diag, rows);
  rows.emplace_back("record", format_record(rec));

  std::ostringstream csv;
  csv << "field,value\n";
  for (const auto& [k, v] : rows) csv << k << ',' << csv_quote(v) << '\n';
  out.csv = csv.str();

  Json r = Json::object();
  r["kind"] = rec.kind;
  r["parameters"] = parameters_json(rec);
  r["space"] = space_name(fr.space);
  r["line"] = Json{{"a", fr.line.intercept}, {"b", fr.line.slope}, {"rss", fr.line.rss}, {"n", fr.line.n}};
  r["window"] = Json{{"t_start", fr.window.t_start}, {"t_end", fr.window.t_end}};
  if (fr.through_origin) {
    r["through_origin"] = Json{{"b", fr.through_origin->slope}, {"rss", fr.through_origin->rss}};
    r["intercept_negligible"] = fr.intercept_negligible;
  }
  r["diagnostics"] = diagnostics_json(diag);
  r["record"] = format_record(rec);
  out.results.push_back(std::move(r));
}

Json projection_json(const RunConfig& cfg, const Projection& p) {
  const ModelRecord rec = to_record(p.model);
  Json r = Json::object();
  r["kind"] = rec.kind;
  r["parameters"] = parameters_json(rec);
  r["diagnostics"] = diagnostics_json(p.diagnostics);
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    Json row = Json::object();
    row["year"] = p.grid[i];
    if (p.values[i]) {
      row["value"] = *p.values[i];
      row["rate"] = rate_out(cfg, rate_at(p.model, p.grid[i]));
    } else {
      row["value"] = nullptr;
      row["rate"] = nullptr;
    }
    row["flag"] = flag_name(p.flags[i]);
    rows.push_back(std::move(row));
  }
  r["rows"] = std::move(rows);
  return r;
}

void run_project(const RunConfig& cfg, const std::optional<TimeSeries>& ts, Output& out) {
  const auto models = scenario_models(cfg, ts);
  if (models.size() != 1) config_error("project takes exactly one model; use compare for several");
  const auto grid = resolve_grid(cfg, ts);
  const Projection p = project(models.front(), grid, cfg.guard_fraction);

  std::ostringstream csv;
  csv << "year,value,rate,flag\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << format_number(grid[i]) << ',';
    if (p.values[i]) {
      csv << format_number(*p.values[i]) << ','
          << format_number(rate_out(cfg, rate_at(p.model, grid[i])));
    } else {
      csv << ',';
    }
    csv << ',' << flag_name(p.flags[i]) << '\n';
  }
  out.csv = csv.str();
  out.results.push_back(projection_json(cfg, p));
}

void run_compare(const RunConfig& cfg, const std::optional<TimeSeries>& ts, Output& out) {
  const auto models = scenario_models(cfg, ts);
  const auto grid = resolve_grid(cfg, ts);
  const Comparison cmp = compare(models, grid, cfg.guard_fraction);

  std::ostringstream csv;
  csv << "year";
  for (std::size_t k = 0; k < cmp.columns.size(); ++k) {
    csv << ",model" << (k + 1) << '_' << to_record(cmp.columns[k].model).kind;
  }
  csv << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << format_number(grid[i]);
    for (const auto& col : cmp.columns) {
      csv << ',';
      if (col.values[i]) csv << format_number(*col.values[i]);
      else csv << flag_name(col.flags[i]);
    }
    csv << '\n';
  }
  out.csv = csv.str();
  for (const auto& col : cmp.columns) out.results.push_back(projection_json(cfg, col));
}

void run_verify(Output& out) {
  constexpr std::size_t kPoints = 200;
  constexpr int kSteps = 100;
  std::ostringstream csv;
  csv << "case,kind,grid_size,step,max_rel_error\n";
  for (const auto& c : reference_cases()) {
    const auto grid = guarded_grid(c.model, c.t_start, c.t_end, kPoints);
    const OdeReport rep = compare_with_closed_form(c.model, grid, kSteps);
    csv << csv_quote(c.label) << ',' << rep.model_kind << ',' << rep.grid_size << ','
        << format_number(rep.step) << ',' << format_number(rep.max_rel_error) << '\n';
    Json r = Json::object();
    r["case"] = c.label;
    r["kind"] = rep.model_kind;
    r["grid_size"] = rep.grid_size;
    r["step"] = rep.step;
    r["max_rel_error"] = rep.max_rel_error;
    out.results.push_back(std::move(r));
  }
  out.csv = csv.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API

std::string format_number(double x) {
  char buf[64];
  std::to_chars_result res;
  if (std::isfinite(x) && std::abs(x) >= 1e6) {
    res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  } else {
    res = std::to_chars(buf, buf + sizeof buf, x);
  }
  return std::string(buf, res.ptr);
}

TimeSeries parse_csv(std::istream& in) {
  struct Row {
    double year;
    double value;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool seen_first = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = trim(line);
    if (lineno == 1 && text.substr(0, 3) == "\xEF\xBB\xBF") text = trim(text.substr(3));
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw GrowthError(Errc::ParseError, kModule,
                        "row " + std::to_string(lineno) + ": expected two comma-separated fields",
                        lineno);
    }
    const auto year = to_double(text.substr(0, comma));
    if (!seen_first && !year) {
      seen_first = true;  // header row
      continue;
    }
    seen_first = true;
    const auto value = to_double(text.substr(comma + 1));
    if (!year || !value || !std::isfinite(*year) || !std::isfinite(*value)) {
      throw GrowthError(Errc::ParseError, kModule,
                        "row " + std::to_string(lineno) + ": malformed number", lineno);
    }
    if (!(*value > 0.0)) {
      throw GrowthError(Errc::NonPositiveValue, kModule,
                        "row " + std::to_string(lineno) + ": values must be > 0", lineno);
    }
    rows.push_back({*year, *value, lineno});
  }
  if (rows.size() < 2) {
    throw GrowthError(Errc::TooFewRows, kModule,
                      std::to_string(rows.size()) + " data row(s); need at least 2");
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.year < b.year; });
  std::vector<double> t, v;
  t.reserve(rows.size());
  v.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].year == rows[i - 1].year) {
      throw GrowthError(Errc::DuplicateYear, kModule,
                        "row " + std::to_string(rows[i].line) + ": year " +
                            format_number(rows[i].year) + " repeats row " +
                            std::to_string(rows[i - 1].line),
                        rows[i].line);
    }
    t.push_back(rows[i].year);
    v.push_back(rows[i].value);
  }
  return TimeSeries::make(std::move(t), std::move(v));
}

TimeSeries ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GrowthError(Errc::FileNotFound, kModule, "cannot open '" + path + "'");
  return parse_csv(in);
}

ParsedArgs parse_args(int argc, const char* const* argv) {
  ParsedArgs parsed;
  RunConfig& cfg = parsed.config;
  CLI::App app{"Growth-rate analysis: rate estimation, trend fits and projections"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::string command = "rates", space, format = "csv", rate_unit = "fraction";
  app.add_option("--input", cfg.input, "Two-column CSV (year,value)");
  app.add_option("--command", command, "rates | fit | project | compare | verify");
  auto* space_opt = app.add_option(
      "--space", space,
      "rate-vs-time | rate-vs-size | reciprocal-rate-vs-time | log-rate-vs-time | "
      "log-size-vs-time | reciprocal-size-vs-time");
  app.add_option("--window-start", cfg.window_start, "First year of the fit window (inclusive)");
  app.add_option("--window-end", cfg.window_end, "Last year of the fit window (inclusive)");
  app.add_option("--smoother-window", cfg.smoother.window, "Odd local-polynomial window length");
  app.add_option("--smoother-degree", cfg.smoother.degree, "Local polynomial degree");
  app.add_option("--anchor-year", cfg.anchor_year, "Normalization year (default: last datum)");
  app.add_option("--anchor-value", cfg.anchor_value, "Normalization size at --anchor-year");
  app.add_option("--grid-start", cfg.grid_start, "First projection year (default: last datum)");
  app.add_option("--grid-end", cfg.grid_end, "Last projection year (default: start + 100)");
  app.add_option("--grid-step", cfg.grid_step, "Projection step in years");
  app.add_option("--format", format, "csv | json");
  app.add_option("--rate-unit", rate_unit, "fraction | percent");
  app.add_option("--guard-fraction", cfg.guard_fraction,
                 "Fraction of the span to a singularity left unplotted");
  app.add_option("--model", cfg.models,
                 "Scenario model, e.g. exponential:r=0.025 (repeatable)");
  app.add_option("--output", cfg.output, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    parsed.help = true;
    parsed.help_text = app.help();
    return parsed;
  } catch (const CLI::ParseError& e) {
    config_error(e.what());
  }

  const auto cmd = parse_command(command);
  if (!cmd) throw GrowthError(Errc::UnknownCommand, kModule, "unknown command '" + command + "'");
  cfg.command = *cmd;
  if (space_opt->count() > 0) {
    const auto s = parse_space(space);
    if (!s) config_error("unknown fit space '" + space + "'");
    cfg.space = *s;
    cfg.space_given = true;
  }
  if (format == "csv") cfg.format = OutputFormat::Csv;
  else if (format == "json") cfg.format = OutputFormat::Json;
  else config_error("unknown format '" + format + "'");
  if (rate_unit == "fraction") cfg.rate_unit = RateUnit::Fraction;
  else if (rate_unit == "percent") cfg.rate_unit = RateUnit::Percent;
  else config_error("unknown rate unit '" + rate_unit + "'");
  return parsed;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg.smoother);
    std::optional<TimeSeries> ts;
    if (!cfg.input.empty()) ts = ingest_csv(cfg.input);

    Output o;
    switch (cfg.command) {
      case Command::Rates:
        if (!ts) config_error("rates needs --input");
        run_rates(cfg, *ts, o);
        break;
      case Command::Fit:
        if (!ts) config_error("fit needs --input");
        run_fit(cfg, *ts, o);
        break;
      case Command::Project: run_project(cfg, ts, o); break;
      case Command::Compare: run_compare(cfg, ts, o); break;
      case Command::Verify: run_verify(o); break;
    }

    std::string doc;
    if (cfg.format == OutputFormat::Csv) {
      doc = std::move(o.csv);
    } else {
      Json j = Json::object();
      j["config"] = config_echo(cfg);
      j["results"] = std::move(o.results);
      dump_json(j, doc, 0);
      doc += '\n';
    }

    if (cfg.output.empty()) {
      out << doc;
    } else {
      std::ofstream f(cfg.output, std::ios::binary | std::ios::trunc);
      if (!f || !(f << doc) || !f.flush()) {
        throw GrowthError(Errc::Unwritable, kModule, "cannot write '" + cfg.output + "'");
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace growth::cli
