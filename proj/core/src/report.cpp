#include "lindeberg/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lindeberg {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return csv_escape(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          // JSON has no infinities; keep them as strings.
          if (!std::isfinite(v)) return format_double(v);
          return v;
        } else {
          return v;
        }
      },
      cell);
}

std::vector<Cell> gap_row(const GapReport& r) {
  return {r.experiment_id,
          static_cast<std::int64_t>(r.n),
          static_cast<std::int64_t>(r.replicates),
          r.mc_gap,
          r.std_error,
          r.theoretical_bound,
          r.passed(),
          r.seed};
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("Table::add_row: width mismatch");
  }
  rows_.push_back(std::move(row));
}

void Table::append(const Table& other) {
  if (columns_.empty()) columns_ = other.columns_;
  if (other.columns_ != columns_) {
    throw std::invalid_argument("Table::append: schema mismatch");
  }
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns().size(); ++c) {
    if (c) out << ',';
    out << csv_escape(table.columns()[c]);
  }
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << cell_text(row[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Table& table, const std::string& suite) {
  nlohmann::ordered_json doc;
  doc["suite"] = suite;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows()) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      obj[table.columns()[c]] = cell_json(row[c]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

Table gap_report_table(std::span<const GapReport> reports) {
  Table table({"experiment_id", "n", "replicates", "mc_gap", "std_error",
               "bound", "passed", "seed"});
  for (const auto& r : reports) table.add_row(gap_row(r));
  return table;
}

std::string gap_report_json(const GapReport& report) {
  nlohmann::ordered_json obj;
  obj["experiment_id"] = report.experiment_id;
  obj["n"] = report.n;
  obj["replicates"] = report.replicates;
  obj["mc_gap"] = report.mc_gap;
  obj["std_error"] = report.std_error;
  obj["bound"] = report.theoretical_bound;
  obj["passed"] = report.passed();
  obj["seed"] = report.seed;
  return obj.dump();
}

std::string gap_report_csv_row(const GapReport& report) {
  const auto row = gap_row(report);
  std::string out;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (c) out += ',';
    out += cell_text(row[c]);
  }
  return out;
}

}  // namespace lindeberg
