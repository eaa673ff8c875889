#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace evt {

/// Minimal CSV emitter: '#' comment lines, one header, plain rows. Numbers
/// go through format_double; fields are never quoted because no field of
/// the emitted schemas can contain a comma.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

  std::size_t rows() const noexcept { return rows_; }

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

std::string csv_field(double value);
/// Empty field for nullopt.
std::string csv_field(const std::optional<double>& value);

}  // namespace evt
