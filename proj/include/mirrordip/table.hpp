#ifndef MIRRORDIP_TABLE_HPP
#define MIRRORDIP_TABLE_HPP

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <string>
#include <vector>

namespace mirrordip {

// Column-major numeric table with named columns; the unit of all tabular
// CLI output.  Column storage is a deque so that references handed out by
// add_column stay valid while further columns are added.
struct Table {
  std::vector<std::string> columns;
  std::deque<std::vector<double>> cols;

  std::vector<double>& add_column(const std::string& name);
  const std::vector<double>& col(const std::string& name) const;
  std::size_t n_rows() const { return cols.empty() ? 0 : cols.front().size(); }
};

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// RFC-4180-style CSV: header row, numeric fields, LF line endings.
void write_csv(const Table& table, std::ostream& out);

}  // namespace mirrordip

#endif  // MIRRORDIP_TABLE_HPP
