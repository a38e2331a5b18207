#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "fcm/benchmarks.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitCompareFailure = 4;

std::filesystem::path resolve_output(const std::string& output) {
  std::filesystem::path path(output);
  if (path.is_absolute()) return path;
  if (const char* root = std::getenv("FCM_OUTPUT_ROOT")) {
    return std::filesystem::path(root) / path;
  }
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embedded-domain high-order Galerkin benchmark runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "run a benchmark from a config file");
  run->add_option("config", config_path, "key = value config file")->required();
  run->add_option("--set", overrides,
                  "override a config value as section.key=value (repeatable)");

  std::string file_a, file_b;
  double rel_tol = 0.0, abs_tol = 0.0;
  CLI::App* compare = app.add_subcommand("compare", "compare two CSV artifacts");
  compare->add_option("a", file_a, "candidate CSV")->required();
  compare->add_option("b", file_b, "reference CSV")->required();
  compare->add_option("--rel-tol", rel_tol, "relative tolerance (default 0)");
  compare->add_option("--abs-tol", abs_tol, "absolute tolerance (default 0)");

  CLI::App* list = app.add_subcommand("list-benchmarks", "list available benchmarks");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& info : fcm::list_benchmarks()) {
      std::cout << info.id << "\t" << info.description << "\n";
    }
    return 0;
  }

  if (compare->parsed()) {
    try {
      const fcm::CsvTable a = fcm::CsvTable::read(file_a);
      const fcm::CsvTable b = fcm::CsvTable::read(file_b);
      const fcm::CompareResult result =
          fcm::compare_tables(a, b, {rel_tol, abs_tol});
      std::cout << (result.pass ? "PASS" : "FAIL")
                << " max_abs=" << fcm::CsvTable::format(result.max_abs_deviation)
                << " max_rel=" << fcm::CsvTable::format(result.max_rel_deviation)
                << "\n";
      if (!result.pass) {
        std::cout << result.message << "\n";
        return kExitCompareFailure;
      }
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "compare: " << e.what() << "\n";
      return kExitCompareFailure;
    }
  }

  // run
  fcm::RunConfig config;
  try {
    fcm::KeyValueConfig raw = fcm::KeyValueConfig::parse_file(config_path);
    for (const auto& item : overrides) {
      const size_t eq = item.find('=');
      if (eq == std::string::npos) {
        throw fcm::ConfigError("--set expects section.key=value, got '" + item + "'");
      }
      raw.set(item.substr(0, eq), item.substr(eq + 1));
    }
    config = fcm::RunConfig::from(raw);
  } catch (const fcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    const auto out_dir = resolve_output(config.output);
    const fcm::RunReport report = fcm::run_benchmark(config, out_dir);
    for (const auto& line : report.case_lines) std::cout << line << "\n";
    if (report.expected_failure_confirmed) std::cout << "expected-failure: confirmed\n";
    for (const auto& artifact : report.artifacts) {
      std::cout << "wrote " << artifact.string() << "\n";
    }
    if (!report.failures.empty()) {
      for (const auto& line : report.failures) std::cerr << "failure: " << line << "\n";
      return kExitSolverFailure;
    }
    return 0;
  } catch (const fcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}
