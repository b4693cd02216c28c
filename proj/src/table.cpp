#include "mirrordip/table.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace mirrordip {

std::vector<double>& Table::add_column(const std::string& name) {
  columns.push_back(name);
  cols.emplace_back();
  return cols.back();
}

const std::vector<double>& Table::col(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return cols[j];
  }
  throw std::out_of_range("Table: no column named '" + name + "'");
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j > 0) out << ',';
    out << table.columns[j];
  }
  out << '\n';
  const std::size_t rows = table.n_rows();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.cols.size(); ++j) {
      if (j > 0) out << ',';
      out << format_double(table.cols[j][i]);
    }
    out << '\n';
  }
}

}  // namespace mirrordip
