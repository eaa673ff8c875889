#include "evt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "evt/analysis.hpp"
#include "evt/csv.hpp"
#include "evt/error.hpp"
#include "evt/format.hpp"
#include "evt/gamma.hpp"

#ifndef EVT_VERSION
#define EVT_VERSION "0.0.0"
#endif

namespace evt::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

[[noreturn]] void bad(std::string_view flag, const std::string& message) {
  throw ParseError(std::string(flag) + ": " + message);
}

double number(std::string_view flag, std::string_view text) {
  const auto v = parse_double(text);
  if (!v || !std::isfinite(*v)) bad(flag, "'" + std::string(text) + "' is not a finite number");
  return *v;
}

std::int64_t sample_count(std::string_view flag, std::string_view text) {
  if (const auto i = parse_integer(text)) return *i;
  const double v = number(flag, text);
  if (v != std::floor(v) || v >= 9.2e18) bad(flag, "'" + std::string(text) + "' is not an integer sample size");
  return static_cast<std::int64_t>(v);
}

SampleSize sample_size(std::string_view flag, std::int64_t n) {
  if (n < 2) bad(flag, "sample size must be at least 2, got " + std::to_string(n));
  return SampleSize::of(n);
}

std::string n_field(const SampleSize& n) {
  if (const auto c = n.count()) return std::to_string(*c);
  return format_double(n.value());
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Parse:
      return kExitParse;
    case ErrorCategory::Domain:
      return kExitDomain;
    case ErrorCategory::Numerical:
      return kExitNumerical;
  }
  return kExitNumerical;
}

const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Parse:
      return "parse";
    case ErrorCategory::Domain:
      return "domain";
    case ErrorCategory::Numerical:
      return "numerical";
  }
  return "numerical";
}

template <class F>
std::optional<double> attempt(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool has(const std::vector<ApproximantKind>& kinds, std::size_t index) {
  return std::any_of(kinds.begin(), kinds.end(), [index](const ApproximantKind& k) { return k.index() == index; });
}

const ApproximantKind* find_kind(const std::vector<ApproximantKind>& kinds, std::size_t index) {
  for (const auto& k : kinds) {
    if (k.index() == index) return &k;
  }
  return nullptr;
}

kernels::Execution execution(const RunConfig& config) {
  return config.serial ? kernels::Execution::Serial : kernels::Execution::Parallel;
}

struct Summary {
  std::ostream& out;
  void line(const std::string& text) { out << text << '\n'; }
};

void write_table(const RunConfig& config, const DistributionSpec& dist, CsvWriter& csv, Summary& summary) {
  if (config.n_values.size() != 1) throw ParseError("--n: table needs exactly one sample size");
  const NormingPair pair = norming_exact(dist, config.n_values.front());
  csv.header({"x", "exact", "gumbel", "accompanying", "two_term", "first_order", "second_order", "gamma"});
  const auto& kinds = config.approximants;
  const auto* second = find_kind(kinds, 4);
  for (double x : linear_grid(config.x_window.lo, config.x_window.hi, config.x_window.steps)) {
    const auto gamma = attempt([&] { return gamma_exact(dist, pair, x).value; });
    std::optional<double> cells[5];
    if (has(kinds, 0)) cells[0] = gumbel_cdf(x);
    if (has(kinds, 1)) cells[1] = attempt([&] { return accompanying_law(dist, pair, x); });
    if (has(kinds, 2)) cells[2] = attempt([&] { return two_term(dist, pair, x); });
    if (has(kinds, 3) && gamma) cells[3] = first_order_corrected(x, *gamma);
    if (second) cells[4] = attempt([&] { return evaluate(dist, pair, *second, x); });
    csv.row({csv_field(x), csv_field(exact_max_cdf(dist, pair, x)), csv_field(cells[0]), csv_field(cells[1]),
             csv_field(cells[2]), csv_field(cells[3]), csv_field(cells[4]), csv_field(gamma)});
  }
  summary.line("n=" + n_field(pair.n) + " a_n=" + format_double(pair.a) + " b_n=" + format_double(pair.b));
}

void write_rates(const RunConfig& config, const DistributionSpec& dist, CsvWriter& csv, Summary& summary) {
  if (config.approximants.size() != 1) throw ParseError("--approx: rates needs exactly one approximant");
  ErrorMetric metric = SupOnGrid{config.x_window.lo, config.x_window.hi, config.x_window.steps};
  if (config.at) metric = AtPoint{*config.at};
  CurveOptions options;
  options.execution = execution(config);
  const ErrorCurve curve = error_curve(dist, config.approximants.front(), metric, config.n_values, options);
  csv.comment(std::string("approx=") + approximant_name(config.approximants.front()) + " metric=" +
              (config.at ? "at-point x=" + format_double(*config.at) : std::string("grid-sup")));
  csv.header({"model", "exponent", "r_squared", "n_min", "n_max", "points"});
  for (RateModel model : {RateModel::PowerInN, RateModel::PowerInLogN}) {
    const RateFit fit = fit_rate(curve, model);
    csv.row({rate_model_name(model), csv_field(fit.exponent), csv_field(fit.r_squared),
             n_field(curve.points.front().n), n_field(curve.points.back().n), std::to_string(fit.points)});
    summary.line(rate_model_name(model) + ": exponent=" + format_double(fit.exponent) +
                 " r2=" + format_double(fit.r_squared));
  }
}

void write_norming(const RunConfig& config, const DistributionSpec& dist, CsvWriter& csv, Summary& summary) {
  csv.header({"n", "a_exact", "b_exact", "a_closed", "b_closed", "ratio_gap", "shift_gap"});
  const bool closed_available = !dist.as<GeneralizedVonMises>() && !dist.as<IteratedLogScale>();
  for (const SampleSize& n : config.n_values) {
    const NormingPair exact = norming_exact(dist, n);
    std::optional<double> a_closed, b_closed, ratio, shift;
    if (closed_available) {
      const NormingPair closed = norming_closed(dist, n);
      const TypesGap gap = types_equivalence_gap(exact, closed);
      a_closed = closed.a;
      b_closed = closed.b;
      ratio = gap.ratio_gap;
      shift = gap.shift_gap;
    }
    csv.row({n_field(n), csv_field(exact.a), csv_field(exact.b), csv_field(a_closed), csv_field(b_closed),
             csv_field(ratio), csv_field(shift)});
  }
  if (!closed_available) summary.line("no closed-form norming for this family; closed columns left empty");
}

bool write_identity(const RunConfig& config, const DistributionSpec& dist, CsvWriter& csv, Summary& summary) {
  csv.header({"n", "x", "exact", "two_term", "abs_gap"});
  double worst = 0.0;
  std::size_t violations = 0;
  for (const SampleSize& n : config.n_values) {
    const NormingPair pair = norming_exact(dist, n);
    const auto xs = guarded_grid(dist, pair, config.x_window.lo, config.x_window.hi, config.x_window.steps);
    for (double x : xs) {
      const double exact = exact_max_cdf(dist, pair, x);
      const double series = two_term(dist, pair, x);
      const double gap = std::abs(exact - series);
      worst = std::max(worst, gap);
      if (!(gap <= config.tolerance)) ++violations;
      csv.row({n_field(n), csv_field(x), csv_field(exact), csv_field(series), csv_field(gap)});
    }
  }
  summary.line("max abs gap=" + format_double(worst) + " tol=" + format_double(config.tolerance) +
               " violations=" + std::to_string(violations));
  return violations == 0;
}

void write_simulation(const RunConfig& config, const DistributionSpec& dist, CsvWriter& csv, Summary& summary) {
  if (config.n_values.size() != 1) throw ParseError("--n: simulate needs exactly one sample size");
  SimulationOptions options;
  options.execution = execution(config);
  const auto sample = simulate_max(dist, config.n_values.front(), config.replications, config.seed, options);
  csv.comment(std::string("rng=") + kernels::CounterRng::algorithm + " seed=" + std::to_string(config.seed) +
              " replications=" + std::to_string(config.replications));
  csv.header({"replication", "scaled_max"});
  for (std::size_t r = 0; r < sample.size(); ++r) csv.row({std::to_string(r), csv_field(sample[r])});
  const NormingPair pair = norming_exact(dist, config.n_values.front());
  for (double x : {-1.0, 0.0, 1.0, 2.0}) {
    summary.line("x=" + format_double(x) + " empirical=" + format_double(empirical_cdf(sample, x)) +
                 " exact=" + format_double(exact_max_cdf(dist, pair, x)));
  }
}

}  // namespace

std::string version() { return EVT_VERSION; }

std::string command_name(Command command) {
  switch (command) {
    case Command::Table:
      return "table";
    case Command::Rates:
      return "rates";
    case Command::Norming:
      return "norming";
    case Command::CheckIdentity:
      return "check-identity";
    case Command::Simulate:
      return "simulate";
  }
  return "table";
}

XWindow parse_x_window(std::string_view text, std::string_view flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) bad(flag, "expected lo:hi:steps, got '" + std::string(text) + "'");
  const double lo = number(flag, parts[0]);
  const double hi = number(flag, parts[1]);
  const auto steps = parse_integer(parts[2]);
  if (!steps) bad(flag, "steps '" + std::string(parts[2]) + "' is not an integer");
  if (!(lo < hi)) bad(flag, "needs lo < hi");
  if (*steps < 2 || *steps > 10'000'000) bad(flag, "steps must lie in [2, 1e7]");
  return XWindow{lo, hi, static_cast<int>(*steps)};
}

std::vector<SampleSize> parse_n_geometric(std::string_view text, std::string_view flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) bad(flag, "expected start:stop:count, got '" + std::string(text) + "'");
  const std::int64_t start = sample_count(flag, parts[0]);
  const std::int64_t stop = sample_count(flag, parts[1]);
  const auto count = parse_integer(parts[2]);
  if (!count || *count < 2 || *count > 10'000) bad(flag, "count must be an integer in [2, 10000]");
  if (start < 2) bad(flag, "start must be at least 2");
  if (!(start < stop)) bad(flag, "needs start < stop");
  const double lo = std::log(static_cast<double>(start));
  const double hi = std::log(static_cast<double>(stop));
  std::vector<SampleSize> out;
  std::int64_t previous = 0;
  for (long long i = 0; i < *count; ++i) {
    std::int64_t n = start;
    if (i + 1 == *count) {
      n = stop;
    } else if (i > 0) {
      n = std::llround(std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(*count - 1)));
    }
    if (n > previous) out.push_back(SampleSize::of(n));
    previous = std::max(previous, n);
  }
  return out;
}

std::vector<SampleSize> parse_n_list(std::string_view text, std::string_view flag) {
  std::vector<SampleSize> out;
  for (std::string_view item : split(text, ',')) {
    const SampleSize n = sample_size(flag, sample_count(flag, item));
    if (!out.empty() && !(out.back() < n)) bad(flag, "sample sizes must be strictly increasing");
    out.push_back(n);
  }
  return out;
}

std::vector<ApproximantKind> parse_approximants(std::string_view text, const DistributionSpec& dist,
                                                std::optional<double> rho, std::optional<double> rate_value,
                                                std::string_view flag) {
  std::vector<ApproximantKind> out;
  for (std::string_view item : split(text, ',')) {
    ApproximantKind kind;
    if (item == "gumbel") {
      kind = Gumbel{};
    } else if (item == "accompanying") {
      kind = Accompanying{};
    } else if (item == "two_term") {
      kind = TwoTerm{};
    } else if (item == "first_order") {
      kind = FirstOrderCorrected{};
    } else if (item == "second_order") {
      if (rho.has_value() != rate_value.has_value()) bad("--rho/--A", "give both or neither");
      if (rho) {
        if (*rho > 0.0) bad("--rho", "must be nonpositive");
        const double a = *rate_value;
        kind = SecondOrder{*rho, [a](SampleSize) { return a; }};
      } else if (const auto* w = dist.as<WeibullLike>()) {
        kind = weibull_like_second_order(w->p);
      } else if (dist.as<ExponentialUnit>()) {
        kind = weibull_like_second_order(1.0);
      } else {
        bad(flag, "second_order needs --rho and --A for " + dist.label());
      }
    } else {
      bad(flag, "unknown approximant '" + std::string(item) +
                    "' (expected gumbel, accompanying, two_term, first_order, second_order)");
    }
    const auto index = kind.index();
    if (std::any_of(out.begin(), out.end(), [index](const ApproximantKind& k) { return k.index() == index; })) {
      bad(flag, "duplicate approximant '" + std::string(item) + "'");
    }
    out.push_back(std::move(kind));
  }
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostream* summary_stream = &out;
  try {
    if (!config.dist) throw ParseError("--dist: no distribution given");
    const DistributionSpec& dist = *config.dist;
    if (config.n_values.empty()) throw ParseError("--n: no sample size given");

    std::ofstream file;
    std::ostringstream buffer;
    std::ostream* csv_stream = &buffer;
    if (config.output_path.empty()) {
      summary_stream = &err;
    }
    CsvWriter csv(*csv_stream);
    csv.comment(std::string(kToolName) + " v" + version() + " dist=" + dist.label() + " cmd=" +
                command_name(config.command));
    Summary summary{*summary_stream};
    bool ok = true;
    switch (config.command) {
      case Command::Table:
        write_table(config, dist, csv, summary);
        break;
      case Command::Rates:
        write_rates(config, dist, csv, summary);
        break;
      case Command::Norming:
        write_norming(config, dist, csv, summary);
        break;
      case Command::CheckIdentity:
        ok = write_identity(config, dist, csv, summary);
        break;
      case Command::Simulate:
        write_simulation(config, dist, csv, summary);
        break;
    }

    if (config.output_path.empty()) {
      out << buffer.str();
    } else {
      file.open(config.output_path, std::ios::binary | std::ios::trunc);
      if (!file) throw DomainError("--out: cannot open '" + config.output_path + "' for writing");
      file << buffer.str();
      file.close();
      if (!file) throw DomainError("--out: failed writing '" + config.output_path + "'");
    }
    summary.line(std::string(kToolName) + " " + command_name(config.command) + ": dist=" + dist.label() +
                 " rows=" + std::to_string(csv.rows()) +
                 (config.output_path.empty() ? std::string() : " -> " + config.output_path));
    if (!ok) {
      err << "error (numerical): two-term identity gap exceeds --tol " << format_double(config.tolerance) << '\n';
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << category_name(e.category()) << "): " << e.what() << '\n';
    return exit_code(e);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maxima laws, Gumbel and accompanying approximations for Gumbel-domain tails", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + version());
  app.require_subcommand(1);

  struct Flags {
    std::string dist, n, n_geom, x, approx, out, at, rho, rate, tol, seed, reps;
    bool serial = false;
  };
  Flags flags;

  auto common = [&flags](CLI::App* sub) {
    sub->add_option("--dist", flags.dist, "exp | weibull:c=,p=,alpha=,ell= | logweibull:... | iterlog:k=,a=,C=")
        ->required();
    sub->add_option("--out", flags.out, "CSV output path (stdout when omitted)");
    sub->add_flag("--serial", flags.serial, "use the serial reference kernels");
  };
  auto n_options = [&flags](CLI::App* sub) {
    auto* n = sub->add_option("--n", flags.n, "sample sizes, comma separated");
    auto* geom = sub->add_option("--n-geom", flags.n_geom, "start:stop:count, log-spaced integers");
    n->excludes(geom);
  };

  auto* table = app.add_subcommand("table", "tabulate exact law and approximants on an x grid");
  common(table);
  table->add_option("--n", flags.n, "sample size")->required();
  table->add_option("--x", flags.x, "lo:hi:steps (default -2:6:161)");
  table->add_option("--approx", flags.approx, "approximants (default gumbel,accompanying,two_term,first_order)");
  table->add_option("--rho", flags.rho, "second-order index rho <= 0");
  table->add_option("--A", flags.rate, "second-order rate A(n) at the given n");

  auto* rates = app.add_subcommand("rates", "fit power-in-n and power-in-log-n decay of one approximant");
  common(rates);
  n_options(rates);
  rates->add_option("--approx", flags.approx, "single approximant")->required();
  rates->add_option("--at", flags.at, "fixed x (default: sup over --x grid)");
  rates->add_option("--x", flags.x, "lo:hi:steps for the sup metric (default -2:6:161)");
  rates->add_option("--rho", flags.rho, "second-order index rho <= 0");
  rates->add_option("--A", flags.rate, "second-order rate A(n)");

  auto* norming = app.add_subcommand("norming", "exact versus closed-form norming constants");
  common(norming);
  n_options(norming);

  auto* identity = app.add_subcommand("check-identity", "check F^n = exp(-e^-gamma) exp(-Sigma/n) on a grid");
  common(identity);
  n_options(identity);
  identity->add_option("--x", flags.x, "lo:hi:steps (default -2:6:61)");
  identity->add_option("--tol", flags.tol, "largest admissible gap (default 1e-10)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo scaled maxima");
  common(simulate);
  simulate->add_option("--n", flags.n, "sample size")->required();
  simulate->add_option("--replications", flags.reps, "number of maxima (default 10000)");
  simulate->add_option("--seed", flags.seed, "unsigned 64-bit seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitParse;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  RunConfig config;
  try {
    if (table->parsed()) config.command = Command::Table;
    if (rates->parsed()) config.command = Command::Rates;
    if (norming->parsed()) config.command = Command::Norming;
    if (identity->parsed()) config.command = Command::CheckIdentity;
    if (simulate->parsed()) config.command = Command::Simulate;

    config.dist_text = flags.dist;
    try {
      config.dist = parse_distribution(flags.dist);
    } catch (const ParseError& e) {
      throw ParseError(std::string("--dist: ") + e.what());
    }
    if (!flags.n.empty()) config.n_values = parse_n_list(flags.n);
    if (!flags.n_geom.empty()) config.n_values = parse_n_geometric(flags.n_geom);
    if (config.n_values.empty()) throw ParseError("--n/--n-geom: one of them is required");
    if (config.command == Command::CheckIdentity) config.x_window = XWindow{-2.0, 6.0, 61};
    if (!flags.x.empty()) config.x_window = parse_x_window(flags.x);
    if (!flags.rho.empty()) config.rho = number("--rho", flags.rho);
    if (!flags.rate.empty()) config.rate_value = number("--A", flags.rate);
    const std::string approx = flags.approx.empty() ? "gumbel,accompanying,two_term,first_order" : flags.approx;
    config.approximants = parse_approximants(approx, *config.dist, config.rho, config.rate_value);
    if (!flags.at.empty()) config.at = number("--at", flags.at);
    if (!flags.tol.empty()) {
      config.tolerance = number("--tol", flags.tol);
      if (!(config.tolerance >= 0.0)) bad("--tol", "must be nonnegative");
    }
    if (!flags.seed.empty()) {
      const auto s = parse_integer(flags.seed);
      if (!s || *s < 0) bad("--seed", "must be a nonnegative integer");
      config.seed = static_cast<std::uint64_t>(*s);
    }
    if (!flags.reps.empty()) {
      const auto r = parse_integer(flags.reps);
      if (!r || *r < 1) bad("--replications", "must be a positive integer");
      config.replications = *r;
    }
    config.output_path = flags.out;
    config.serial = flags.serial;
  } catch (const Error& e) {
    err << "error (" << category_name(e.category()) << "): " << e.what() << '\n';
    return exit_code(e);
  }
  return run(config, out, err);
}

}  // namespace evt::cli
