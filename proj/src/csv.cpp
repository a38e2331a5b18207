#include "fcm/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fcm {

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("CsvTable: row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::format(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("CsvTable: cannot open " + path.string());
  for (size_t i = 0; i < columns_.size(); ++i) {
    out << columns_[i] << (i + 1 < columns_.size() ? "," : "");
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << row[i] << (i + 1 < row.size() ? "," : "");
    }
    out << '\n';
  }
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("CsvTable: cannot open " + path.string());
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CsvTable: empty file");
  CsvTable table(split(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.add_row(split(line));
  }
  return table;
}

namespace {

bool parse_number(const std::string& text, double& value) {
  try {
    size_t used = 0;
    value = std::stod(text, &used);
    return used == text.size();
  } catch (...) {
    return false;
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    out += items[i];
    if (i + 1 < items.size()) out += ",";
  }
  return out;
}

}  // namespace

CompareResult compare_tables(const CsvTable& a, const CsvTable& b,
                             const CompareOptions& options) {
  CompareResult result;
  if (a.columns() != b.columns()) {
    result.message = "schema mismatch: [" + join(a.columns()) + "] vs [" +
                     join(b.columns()) + "]";
    return result;
  }
  if (a.rows().size() != b.rows().size()) {
    result.message = "row count mismatch: " + std::to_string(a.rows().size()) + " vs " +
                     std::to_string(b.rows().size());
    return result;
  }
  result.pass = true;
  for (size_t r = 0; r < a.rows().size(); ++r) {
    for (size_t c = 0; c < a.columns().size(); ++c) {
      const std::string& cell_a = a.rows()[r][c];
      const std::string& cell_b = b.rows()[r][c];
      double va = 0.0, vb = 0.0;
      if (parse_number(cell_a, va) && parse_number(cell_b, vb)) {
        const double abs_dev = std::abs(va - vb);
        const double rel_dev = vb != 0.0 ? abs_dev / std::abs(vb) : abs_dev;
        result.max_abs_deviation = std::max(result.max_abs_deviation, abs_dev);
        result.max_rel_deviation = std::max(result.max_rel_deviation, rel_dev);
        if (abs_dev > options.abs_tol + options.rel_tol * std::abs(vb)) {
          if (result.pass) {
            result.pass = false;
            result.message = "row " + std::to_string(r + 1) + ", column '" +
                             a.columns()[c] + "': " + cell_a + " vs " + cell_b;
          }
        }
      } else if (cell_a != cell_b) {
        if (result.pass) {
          result.pass = false;
          result.message = "row " + std::to_string(r + 1) + ", column '" +
                           a.columns()[c] + "': '" + cell_a + "' vs '" + cell_b + "'";
        }
      }
    }
  }
  return result;
}

}  // namespace fcm
