#ifndef FCM_CSV_HPP
#define FCM_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace fcm {

/// Column-ordered CSV artifact. Numbers are always written with enough
/// digits to round-trip, so identical runs produce bitwise-identical files.
class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void add_row(std::vector<std::string> cells);

  static std::string format(double value);
  static std::string format(int value) { return std::to_string(value); }

  void write(const std::filesystem::path& path) const;
  static CsvTable read(const std::filesystem::path& path);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct CompareOptions {
  double rel_tol = 0.0;
  double abs_tol = 0.0;
};

struct CompareResult {
  bool pass = false;
  std::string message;          // first violation or schema diagnostic
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;
};

/// Per-cell comparison of two tables with matching schemas. Numeric cells
/// pass when |a-b| <= abs_tol + rel_tol*|b|; other cells must match exactly.
CompareResult compare_tables(const CsvTable& a, const CsvTable& b,
                             const CompareOptions& options);

}  // namespace fcm

#endif
