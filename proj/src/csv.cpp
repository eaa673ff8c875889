#include "evt/csv.hpp"

#include <stdexcept>

#include "evt/format.hpp"

namespace evt {

void CsvWriter::comment(std::string_view text) { out_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  row(columns);
  rows_ = 0;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (columns_ != 0 && fields.size() != columns_) {
    throw std::logic_error("csv row has " + std::to_string(fields.size()) + " fields, header has " +
                           std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
  ++rows_;
}

std::string csv_field(double value) { return format_double(value); }

std::string csv_field(const std::optional<double>& value) { return value ? format_double(*value) : std::string(); }

}  // namespace evt
