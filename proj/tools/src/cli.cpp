#include "cli.hpp"

#include "output.hpp"
#include "reference_tables.hpp"

#include "bh/constants.hpp"
#include "bh/counting.hpp"
#include "bh/poly.hpp"
#include "bh/quadrature.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bh::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Acceleration { automatic, naive, quadratic };

struct Options {
  std::vector<std::string> polys;
  std::string truncate = "1e6";
  std::string accelerate = "auto";
  std::string tol = "1e-9";
  std::string presieve = "1e5";
  std::string segment_size = "1048576";
  std::string workers;
  std::string format = "markdown";
  std::string x;
  std::string checkpoints;
  std::string cap = "1e7";
  bool full = false;
  bool progress = false;
  int table_id = 0;
};

// Fully validated view of Options.
struct Config {
  std::vector<Polynomial> polys;
  std::uint64_t truncation = 0;
  Acceleration acceleration = Acceleration::automatic;
  double tol = 0.0;
  CountConfig count;
  Format format = Format::markdown;
};

std::uint64_t count_option(std::string_view name, const std::string& text) {
  try {
    return parse_count(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + std::string(name) + ": expected a non-negative integer, got '" + text + "'");
  }
}

unsigned default_workers() {
  if (const char* env = std::getenv("BH_WORKERS"); env && *env) {
    const std::uint64_t w = count_option("workers (BH_WORKERS)", env);
    if (w == 0 || w > 4096) throw UsageError("BH_WORKERS must be between 1 and 4096");
    return static_cast<unsigned>(w);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

Config make_config(const Options& o, std::ostream& err) {
  Config c;
  for (const auto& text : o.polys) c.polys.push_back(parse_polynomial(text));
  c.truncation = count_option("truncate", o.truncate);
  if (o.accelerate == "auto") {
    c.acceleration = Acceleration::automatic;
  } else if (o.accelerate == "naive") {
    c.acceleration = Acceleration::naive;
  } else if (o.accelerate == "quadratic") {
    c.acceleration = Acceleration::quadratic;
  } else {
    throw UsageError("--accelerate: expected auto, naive or quadratic");
  }
  try {
    c.tol = parse_real(o.tol);
  } catch (const std::invalid_argument&) {
    throw UsageError("--tol: expected a positive real, got '" + o.tol + "'");
  }
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  c.count.presieve_bound = count_option("presieve", o.presieve);
  c.count.segment_size = count_option("segment-size", o.segment_size);
  if (o.workers.empty()) {
    c.count.workers = default_workers();
  } else {
    const std::uint64_t w = count_option("workers", o.workers);
    if (w == 0 || w > 4096) throw UsageError("--workers must be between 1 and 4096");
    c.count.workers = static_cast<unsigned>(w);
  }
  const auto format = parse_format(o.format);
  if (!format) throw UsageError("--format: expected csv, tsv or markdown");
  c.format = *format;
  if (o.progress) {
    c.count.progress = [&err](std::uint64_t done, std::uint64_t found) {
      err << "\rprocessed n <= " << done << ", " << found << " found" << std::flush;
    };
  }
  return c;
}

std::vector<std::uint64_t> checkpoints_of(const Options& o) {
  if (!o.checkpoints.empty()) {
    std::vector<std::uint64_t> out;
    std::stringstream in(o.checkpoints);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(count_option("checkpoints", item));
    if (out.empty()) throw UsageError("--checkpoints: empty list");
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] == 0) throw UsageError("--checkpoints: values must be positive");
      if (i && out[i] <= out[i - 1]) throw UsageError("--checkpoints: values must be strictly increasing");
    }
    return out;
  }
  if (o.x.empty()) throw UsageError("one of --x or --checkpoints is required");
  const std::uint64_t x = count_option("x", o.x);
  if (x == 0) throw UsageError("--x must be positive");
  return decade_checkpoints(x);
}

EulerProductResult compute_constant(const PolySystem& system, const Config& c) {
  switch (c.acceleration) {
    case Acceleration::naive:
      return bh_constant_naive(system, c.truncation);
    case Acceleration::quadratic:
      if (system.size() != 1) {
        throw Error(ErrorCode::not_quadratic, "quadratic acceleration needs exactly one polynomial");
      }
      return bh_constant_accelerated(system.polys.front(), c.truncation);
    case Acceleration::automatic:
      break;
  }
  if (supports_acceleration(system)) return bh_constant_accelerated(system.polys.front(), c.truncation);
  return bh_constant_naive(system, c.truncation);
}

std::string system_label(const PolySystem& system) {
  std::string out;
  for (const auto& f : system.polys) {
    if (!out.empty()) out += "; ";
    out += format_polynomial(f);
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Half away from zero, as std::llround.
std::string rounded(double v) { return std::to_string(std::llround(v)); }

std::string real_cell(double v, Format format, int markdown_digits) {
  return format == Format::markdown ? fixed(v, markdown_digits) : exact_real(v);
}

std::vector<std::string> constant_notes(const PolySystem& system, const EulerProductResult& c) {
  std::vector<std::string> notes;
  notes.push_back("system: " + system_label(system));
  notes.push_back("constant: " + exact_real(c.value) + " (" + std::string(to_string(c.mode)) +
                  ", primes <= " + std::to_string(c.truncation) + ", drift " + exact_real(c.error_estimate) + ")");
  std::ostringstream bounds;
  bounds << "integrals: modified from " << modified_lower_bound(system) << ", original from "
         << kOriginalLowerBound;
  notes.push_back(bounds.str());
  return notes;
}

std::string certainty_note(std::span<const CountResult> counts) {
  bool probable = false;
  for (const auto& r : counts) probable = probable || r.certainty == Certainty::probable;
  return probable ? "certainty: probable (some primality tests above 2^64 were probabilistic)"
                  : "certainty: deterministic";
}

TextTable prediction_table(const std::vector<PredictionRow>& rows, Format format) {
  TextTable t;
  t.header = {"x", "actual", "modified", "original", "rel_err_modified", "rel_err_original"};
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    cells.push_back(std::to_string(r.x));
    cells.push_back(r.actual ? std::to_string(*r.actual) : std::string());
    if (format == Format::markdown) {
      cells.push_back(rounded(r.modified));
      cells.push_back(rounded(r.original));
    } else {
      cells.push_back(exact_real(r.modified));
      cells.push_back(exact_real(r.original));
    }
    for (const auto& rel : {r.rel_err_modified, r.rel_err_original}) {
      if (!rel) {
        cells.emplace_back();
      } else {
        cells.push_back(format == Format::markdown ? fixed(100.0 * *rel, 3) + "%" : exact_real(*rel));
      }
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::vector<CountResult> timed_count(const PolySystem& system, std::span<const std::uint64_t> xs,
                                     const CountConfig& config, std::ostream& err) {
  auto results = count_series(system, xs, config);
  if (config.progress) err << '\n';
  if (!results.empty()) {
    err << "counted n <= " << results.back().x << " in " << fixed(results.back().elapsed, 2) << " s with "
        << config.workers << " worker(s)\n";
  }
  return results;
}

int cmd_constant(const Options& o, std::ostream& out, std::ostream& err) {
  const Config c = make_config(o, err);
  const PolySystem system = build_system(c.polys);
  const EulerProductResult r = compute_constant(system, c);
  TextTable t;
  const std::string l_value = r.l_value ? real_cell(*r.l_value, c.format, 15) : std::string();
  if (c.format == Format::markdown) {
    t.header = {"field", "value"};
    t.rows = {{"system", system_label(system)},
              {"value", fixed(r.value, 12)},
              {"mode", std::string(to_string(r.mode))},
              {"truncation", std::to_string(r.truncation)},
              {"error_estimate", exact_real(r.error_estimate)}};
    if (r.l_value) t.rows.push_back({"l_value", l_value});
  } else {
    t.header = {"value", "mode", "truncation", "error_estimate", "l_value"};
    t.rows = {{exact_real(r.value), std::string(to_string(r.mode)), std::to_string(r.truncation),
               exact_real(r.error_estimate), l_value}};
  }
  write_table(out, t, c.format);
  return kExitOk;
}

int cmd_count(const Options& o, std::ostream& out, std::ostream& err) {
  const Config c = make_config(o, err);
  const PolySystem system = build_system(c.polys);
  const auto xs = checkpoints_of(o);
  const auto counts = timed_count(system, xs, c.count, err);
  TextTable t;
  t.header = {"x", "count"};
  for (const auto& r : counts) t.rows.push_back({std::to_string(r.x), std::to_string(r.count)});
  t.notes = {"system: " + system_label(system), certainty_note(counts)};
  write_table(out, t, c.format);
  return kExitOk;
}

int cmd_predict(const Options& o, std::ostream& out, std::ostream& err) {
  const Config c = make_config(o, err);
  const PolySystem system = build_system(c.polys);
  const auto xs = checkpoints_of(o);
  const EulerProductResult constant = compute_constant(system, c);
  TextTable t = prediction_table(predict(system, xs, constant, {}, c.tol), c.format);
  t.notes = constant_notes(system, constant);
  write_table(out, t, c.format);
  return kExitOk;
}

int cmd_table(const Options& o, std::ostream& out, std::ostream& err) {
  const Config c = make_config(o, err);
  const PolySystem system = build_system(c.polys);
  const auto xs = checkpoints_of(o);
  const EulerProductResult constant = compute_constant(system, c);
  const auto counts = timed_count(system, xs, c.count, err);
  TextTable t = prediction_table(predict(system, xs, constant, counts, c.tol), c.format);
  t.notes = constant_notes(system, constant);
  t.notes.push_back(certainty_note(counts));
  write_table(out, t, c.format);
  return kExitOk;
}

int cmd_reproduce(Options o, std::ostream& out, std::ostream& err) {
  const ReferenceTable* ref = find_reference_table(o.table_id);
  if (!ref) throw UsageError("reproduce: unknown table " + std::to_string(o.table_id) + " (expected 1 or 2)");
  o.polys.assign(ref->polys.begin(), ref->polys.end());
  const Config c = make_config(o, err);
  const std::uint64_t cap = o.full ? UINT64_MAX : count_option("cap", o.cap);

  std::vector<ReferenceRow> rows;
  for (const auto& row : ref->rows) {
    if (row.x <= cap) rows.push_back(row);
  }
  if (rows.empty()) throw UsageError("reproduce: --cap is below the first row (x = 100)");
  if (rows.back().x > 10'000'000) {
    err << "warning: rows up to x = " << rows.back().x << " take hours of counting\n";
  }
  std::vector<std::uint64_t> xs;
  for (const auto& row : rows) xs.push_back(row.x);

  const PolySystem system = build_system(c.polys);
  const EulerProductResult constant = compute_constant(system, c);
  const auto counts = timed_count(system, xs, c.count, err);
  const auto predicted = predict(system, xs, constant, counts, c.tol);

  TextTable t;
  t.header = {"x", "column", "reference", "computed", "verdict"};
  int passed = 0, total = 0;
  const auto cell = [&](std::uint64_t x, const char* column, std::int64_t reference, std::int64_t computed,
                        bool ok) {
    t.rows.push_back({std::to_string(x), column, std::to_string(reference), std::to_string(computed),
                      ok ? "pass" : "FAIL"});
    passed += ok;
    ++total;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto actual = static_cast<std::int64_t>(counts[i].count);
    const std::int64_t modified = std::llround(predicted[i].modified);
    const std::int64_t original = std::llround(predicted[i].original);
    cell(rows[i].x, "actual", static_cast<std::int64_t>(rows[i].actual), actual,
         counts[i].count == rows[i].actual);
    cell(rows[i].x, "modified", rows[i].modified, modified, std::llabs(modified - rows[i].modified) <= 1);
    cell(rows[i].x, "original", rows[i].original, original, std::llabs(original - rows[i].original) <= 1);
  }
  t.notes = constant_notes(system, constant);
  t.notes.push_back(certainty_note(counts));
  t.notes.push_back("counts must match exactly; rounded estimates within 1");
  t.notes.push_back("table " + std::to_string(ref->id) + " (" + std::string(ref->title) + "): " +
                    std::to_string(passed) + "/" + std::to_string(total) + " cells pass");
  write_table(out, t, c.format);
  return passed == total ? kExitOk : kExitMismatch;
}

void add_engine_options(CLI::App* sub, Options& o) {
  sub->add_option("--truncate", o.truncate, "Largest prime in the Euler product (default 1e6)");
  sub->add_option("--accelerate", o.accelerate, "auto | naive | quadratic (default auto)");
  sub->add_option("--tol", o.tol, "Quadrature tolerance (default 1e-9)");
  sub->add_option("--presieve", o.presieve, "Largest pre-sieve prime, 0 to disable (default 1e5)");
  sub->add_option("--segment-size", o.segment_size, "Candidates per work unit, a power of two (default 2^20)");
  sub->add_option("--workers", o.workers, "Counting threads (default BH_WORKERS or hardware threads)");
  sub->add_option("--format", o.format, "csv | tsv | markdown (default markdown)");
  sub->add_flag("--progress", o.progress, "Report counting progress on stderr");
}

void add_range_options(CLI::App* sub, Options& o) {
  sub->add_option("--x", o.x, "Largest x; checkpoints are the powers of ten up to it");
  sub->add_option("--checkpoints", o.checkpoints, "Comma-separated increasing checkpoints, e.g. 1e2,5e3,1e6");
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::syntax_error:
    case ErrorCode::non_positive_lead:
    case ErrorCode::constant_polynomial:
    case ErrorCode::duplicate_polynomial:
    case ErrorCode::inadmissible:
    case ErrorCode::irreducibility_failed:
    case ErrorCode::not_quadratic:
    case ErrorCode::discriminant_not_fundamental:
    case ErrorCode::not_fundamental:
    case ErrorCode::not_negative:
      return kExitInvalidSystem;
    case ErrorCode::overflow:
      return kExitOverflow;
    case ErrorCode::invalid_argument:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

std::uint64_t parse_count(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return value;
  const double real = parse_real(text);
  if (!(real >= 0.0) || real >= 18446744073709551616.0 || real != std::floor(real)) {
    throw std::invalid_argument("not a non-negative integer");
  }
  return static_cast<std::uint64_t>(real);
}

double parse_real(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number");
  return v;
}

std::vector<std::uint64_t> decade_checkpoints(std::uint64_t x_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 100; d <= x_max; d *= 10) {
    out.push_back(d);
    if (d > UINT64_MAX / 10) break;
  }
  if (out.empty() || out.back() != x_max) out.push_back(x_max);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bateman-Horn constants, prediction integrals and simultaneous prime counts", "bh"};
  app.require_subcommand(1);
  Options o;

  CLI::App* constant = app.add_subcommand("constant", "Euler product constant of a polynomial system");
  CLI::App* count = app.add_subcommand("count", "Exact count of n <= x with every polynomial prime");
  CLI::App* predict_cmd = app.add_subcommand("predict", "Modified and original estimates at checkpoints");
  CLI::App* table = app.add_subcommand("table", "Counts next to both estimates with relative errors");
  CLI::App* reproduce = app.add_subcommand("reproduce", "Recompute a reference table and check every cell");

  for (CLI::App* sub : {constant, count, predict_cmd, table}) {
    sub->add_option("--poly", o.polys, "Polynomial in n, repeatable (e.g. --poly n --poly 2n+1)")->required();
    add_engine_options(sub, o);
  }
  for (CLI::App* sub : {count, predict_cmd, table}) add_range_options(sub, o);
  reproduce->add_option("table", o.table_id, "Reference table: 1 (n, 2n+1) or 2 (6n^2+1)")->required();
  reproduce->add_option("--cap", o.cap, "Largest x to recompute (default 1e7)");
  reproduce->add_flag("--full", o.full, "Recompute every row regardless of --cap");
  add_engine_options(reproduce, o);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (constant->parsed()) return cmd_constant(o, out, err);
    if (count->parsed()) return cmd_count(o, out, err);
    if (predict_cmd->parsed()) return cmd_predict(o, out, err);
    if (table->parsed()) return cmd_table(o, out, err);
    return cmd_reproduce(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace bh::cli
