#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lindeberg/monte_carlo.hpp"

namespace lindeberg {

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

/// A rectangular result table with a fixed column schema.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  /// Throws std::invalid_argument if the row width does not match.
  void add_row(std::vector<Cell> row);
  void append(const Table& other);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// 17 significant digits ("%.17g"); "inf", "-inf", "nan" for non-finite.
std::string format_double(double v);

/// Header row plus one line per row; strings quoted when needed.
std::string to_csv(const Table& table);
/// {"suite": ..., "rows": [{column: value, ...}, ...]}.
std::string to_json(const Table& table, const std::string& suite);

/// Columns: experiment_id, n, replicates, mc_gap, std_error, bound, passed,
/// seed.
Table gap_report_table(std::span<const GapReport> reports);
std::string gap_report_json(const GapReport& report);
std::string gap_report_csv_row(const GapReport& report);

}  // namespace lindeberg
