#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace evt {

/// Shortest decimal that round-trips to the same binary64 value, with '.'
/// as separator regardless of locale.
std::string format_double(double value);

/// Strict locale-independent parse; the whole string must be consumed.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

}  // namespace evt
