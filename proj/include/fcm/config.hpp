#ifndef FCM_CONFIG_HPP
#define FCM_CONFIG_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fcm/transport.hpp"

namespace fcm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw "[section] / key = value" file. '#' starts a full-line comment; values
/// are taken verbatim. Keys are addressed as "section.key".
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::filesystem::path& path);
  static KeyValueConfig parse_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Typed, validated benchmark configuration. Unknown keys and out-of-range
/// values are rejected at construction.
struct RunConfig {
  // [run]
  std::string benchmark;  // rod-linear | rod-nonlinear | transport | quadrature-study
  std::string output;     // artifact directory (resolved against FCM_OUTPUT_ROOT)

  // [discretization] (rod benchmarks)
  std::string family = "both";  // pversion | bspline | both
  int p_min = 1;
  int p_max = 15;
  int cells_pversion = 2;
  int cells_bspline = 11;
  int subcell_depth = 20;

  // [penalization] (rod benchmarks)
  int alpha_exponent = 8;

  // [nonlinear]
  std::string fixture = "sine";    // sine | rigid
  std::string mode = "resetting";  // standard | resetting
  int increments = 10;
  double pull = 1.0;
  bool profiles = true;
  bool sweep = true;
  int profile_cells = 16;
  int profile_p = 15;
  int profile_points = 401;

  // [transport]
  int transport_cells = 8;
  int transport_p = 8;
  double velocity = 1.0;
  double diffusion = 1.0;
  std::string inclusions = "default";  // "default" | "none" | "cx,cy,r | cx,cy,r"
  std::string bitmap;                  // optional PGM path overriding inclusions
  int samples = 101;
  int transport_depth = 5;
  int transport_exponent = 6;

  // [quadrature-study]
  int study_points = 18;
  int study_depth = 10;

  static RunConfig from(const KeyValueConfig& raw);
  std::string serialize() const;

  std::vector<CircleSpec> parsed_inclusions() const;
  std::vector<BasisFamily> selected_families() const;
};

}  // namespace fcm

#endif
