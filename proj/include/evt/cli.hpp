#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "evt/approx.hpp"
#include "evt/norming.hpp"
#include "evt/tails.hpp"

namespace evt::cli {

inline constexpr const char* kToolName = "evt-accompany";
std::string version();

enum class Command { Table, Rates, Norming, CheckIdentity, Simulate };

std::string command_name(Command command);

struct XWindow {
  double lo;
  double hi;
  int steps;
};

struct RunConfig {
  Command command = Command::Table;
  std::string dist_text;
  std::optional<DistributionSpec> dist;
  std::vector<SampleSize> n_values;
  XWindow x_window{-2.0, 6.0, 161};
  std::vector<ApproximantKind> approximants;
  // rates: AtPoint when set, otherwise sup over x_window.
  std::optional<double> at;
  std::string output_path;  // empty: CSV to stdout
  std::uint64_t seed = 1;
  std::int64_t replications = 10'000;
  double tolerance = 1e-10;
  std::optional<double> rho;
  std::optional<double> rate_value;
  bool serial = false;
};

/// `lo:hi:steps`, lo < hi, steps >= 2. ParseError naming `flag` otherwise.
XWindow parse_x_window(std::string_view text, std::string_view flag = "--x");
/// `start:stop:count`, log-spaced integers, deduplicated.
std::vector<SampleSize> parse_n_geometric(std::string_view text, std::string_view flag = "--n-geom");
/// Comma-separated integers (1000000 or 1e6 style) >= 2, strictly increasing.
std::vector<SampleSize> parse_n_list(std::string_view text, std::string_view flag = "--n");
/// Comma-separated subset of gumbel, accompanying, two_term, first_order, second_order.
/// second_order uses rho/A when given, else the Weibull-like preset of dist.
std::vector<ApproximantKind> parse_approximants(std::string_view text, const DistributionSpec& dist,
                                                std::optional<double> rho, std::optional<double> rate_value,
                                                std::string_view flag = "--approx");

/// Runs one command. CSV goes to config.output_path (or `out` when empty),
/// the summary to `out` (or `err` when the CSV took `out`). Returns the exit
/// status: 0 ok, 2 parse, 3 domain, 4 numerical.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Same exit statuses as run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evt::cli
