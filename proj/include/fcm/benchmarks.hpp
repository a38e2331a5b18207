#ifndef FCM_BENCHMARKS_HPP
#define FCM_BENCHMARKS_HPP

#include "fcm/config.hpp"
#include "fcm/csv.hpp"

namespace fcm {

struct RunReport {
  std::vector<std::string> case_lines;   // per-case rows for report.txt
  std::vector<std::string> failures;     // unexpected failures (exit code 3)
  bool expected_failure_confirmed = false;
  std::vector<std::filesystem::path> artifacts;
};

struct BenchmarkInfo {
  std::string id;
  std::string description;
};

std::vector<BenchmarkInfo> list_benchmarks();

/// Executes the configured benchmark, writes its CSV artifacts and report.txt
/// under out_dir (created if missing).
RunReport run_benchmark(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace fcm

#endif
