#include "fcm/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "fcm/csv.hpp"

namespace fcm {
namespace {

std::string trim(const std::string& text) {
  const size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']') {
        throw ConfigError("line " + std::to_string(number) + ": malformed section");
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      continue;
    }
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(number) + ": empty key");
    }
    config.set(section.empty() ? key : section + "." + key,
               trim(stripped.substr(eq + 1)));
  }
  return config;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

namespace {

class SchemaReader {
 public:
  explicit SchemaReader(const KeyValueConfig& raw) : raw_(raw) {}

  void string_key(const std::string& key, std::string& field,
                  const std::vector<std::string>& allowed = {}) {
    visit(key, [&](const std::string& text) {
      if (!allowed.empty() &&
          std::find(allowed.begin(), allowed.end(), text) == allowed.end()) {
        throw ConfigError("key '" + key + "': invalid value '" + text + "'");
      }
      field = text;
    });
  }

  void free_string_key(const std::string& key, std::string& field) {
    visit(key, [&](const std::string& text) { field = text; });
  }

  void int_key(const std::string& key, int& field, int lo, int hi) {
    visit(key, [&](const std::string& text) {
      int value = 0;
      try {
        size_t used = 0;
        value = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
      } catch (...) {
        throw ConfigError("key '" + key + "': not an integer: '" + text + "'");
      }
      if (value < lo || value > hi) {
        throw ConfigError("key '" + key + "': " + text + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
      field = value;
    });
  }

  void double_key(const std::string& key, double& field, double lo, double hi) {
    visit(key, [&](const std::string& text) {
      double value = 0.0;
      try {
        size_t used = 0;
        value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
      } catch (...) {
        throw ConfigError("key '" + key + "': not a number: '" + text + "'");
      }
      if (!(value >= lo && value <= hi)) {
        throw ConfigError("key '" + key + "': value out of range");
      }
      field = value;
    });
  }

  void bool_key(const std::string& key, bool& field) {
    visit(key, [&](const std::string& text) {
      if (text == "true") {
        field = true;
      } else if (text == "false") {
        field = false;
      } else {
        throw ConfigError("key '" + key + "': expected true or false");
      }
    });
  }

  void reject_unknown() const {
    for (const auto& [key, value] : raw_.values()) {
      (void)value;
      if (!seen_.count(key)) throw ConfigError("unknown key '" + key + "'");
    }
  }

 private:
  void visit(const std::string& key, const std::function<void(const std::string&)>& f) {
    seen_.insert(key);
    const auto it = raw_.values().find(key);
    if (it != raw_.values().end()) f(it->second);
  }

  const KeyValueConfig& raw_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig RunConfig::from(const KeyValueConfig& raw) {
  RunConfig config;
  SchemaReader reader(raw);

  reader.string_key("run.benchmark", config.benchmark,
                    {"rod-linear", "rod-nonlinear", "transport", "quadrature-study"});
  reader.free_string_key("run.output", config.output);

  reader.string_key("discretization.family", config.family,
                    {"pversion", "bspline", "both"});
  int p_single = 0;
  reader.int_key("discretization.p", p_single, 1, 30);
  if (p_single > 0) config.p_min = config.p_max = p_single;
  reader.int_key("discretization.p_min", config.p_min, 1, 30);
  reader.int_key("discretization.p_max", config.p_max, 1, 30);
  reader.int_key("discretization.cells_pversion", config.cells_pversion, 1, 1024);
  reader.int_key("discretization.cells_bspline", config.cells_bspline, 1, 1024);
  reader.int_key("discretization.subcell_depth", config.subcell_depth, 0, 30);

  reader.int_key("penalization.exponent", config.alpha_exponent, 1, 18);

  reader.string_key("nonlinear.fixture", config.fixture, {"sine", "rigid"});
  reader.string_key("nonlinear.mode", config.mode, {"standard", "resetting"});
  reader.int_key("nonlinear.increments", config.increments, 1, 10000);
  reader.double_key("nonlinear.pull", config.pull, 0.0, 1e6);
  reader.bool_key("nonlinear.profiles", config.profiles);
  reader.bool_key("nonlinear.sweep", config.sweep);
  reader.int_key("nonlinear.profile_cells", config.profile_cells, 1, 1024);
  reader.int_key("nonlinear.profile_p", config.profile_p, 1, 30);
  reader.int_key("nonlinear.profile_points", config.profile_points, 2, 100000);

  reader.int_key("transport.cells", config.transport_cells, 1, 64);
  reader.int_key("transport.p", config.transport_p, 1, 20);
  reader.double_key("transport.velocity", config.velocity, -1e6, 1e6);
  reader.double_key("transport.diffusion", config.diffusion, 1e-12, 1e12);
  reader.free_string_key("transport.inclusions", config.inclusions);
  reader.free_string_key("transport.bitmap", config.bitmap);
  reader.int_key("transport.samples", config.samples, 2, 100000);
  reader.int_key("transport.subcell_depth", config.transport_depth, 0, 30);
  reader.int_key("transport.exponent", config.transport_exponent, 1, 18);

  reader.int_key("quadrature-study.points", config.study_points, 1, 64);
  reader.int_key("quadrature-study.max_depth", config.study_depth, 0, 30);

  reader.reject_unknown();

  if (config.benchmark.empty()) throw ConfigError("missing required key 'run.benchmark'");
  if (config.p_min > config.p_max) {
    throw ConfigError("discretization.p_min exceeds discretization.p_max");
  }
  if (config.output.empty()) config.output = config.benchmark;
  config.parsed_inclusions();  // validates the inclusion list
  return config;
}

std::string RunConfig::serialize() const {
  std::ostringstream out;
  out << "[run]\n";
  out << "benchmark = " << benchmark << "\n";
  out << "output = " << output << "\n\n";
  out << "[discretization]\n";
  out << "family = " << family << "\n";
  out << "p_min = " << p_min << "\n";
  out << "p_max = " << p_max << "\n";
  out << "cells_pversion = " << cells_pversion << "\n";
  out << "cells_bspline = " << cells_bspline << "\n";
  out << "subcell_depth = " << subcell_depth << "\n\n";
  out << "[penalization]\n";
  out << "exponent = " << alpha_exponent << "\n\n";
  out << "[nonlinear]\n";
  out << "fixture = " << fixture << "\n";
  out << "mode = " << mode << "\n";
  out << "increments = " << increments << "\n";
  out << "pull = " << CsvTable::format(pull) << "\n";
  out << "profiles = " << (profiles ? "true" : "false") << "\n";
  out << "sweep = " << (sweep ? "true" : "false") << "\n";
  out << "profile_cells = " << profile_cells << "\n";
  out << "profile_p = " << profile_p << "\n";
  out << "profile_points = " << profile_points << "\n\n";
  out << "[transport]\n";
  out << "cells = " << transport_cells << "\n";
  out << "p = " << transport_p << "\n";
  out << "velocity = " << CsvTable::format(velocity) << "\n";
  out << "diffusion = " << CsvTable::format(diffusion) << "\n";
  out << "inclusions = " << inclusions << "\n";
  out << "bitmap = " << bitmap << "\n";
  out << "samples = " << samples << "\n";
  out << "subcell_depth = " << transport_depth << "\n";
  out << "exponent = " << transport_exponent << "\n\n";
  out << "[quadrature-study]\n";
  out << "points = " << study_points << "\n";
  out << "max_depth = " << study_depth << "\n";
  return out.str();
}

std::vector<CircleSpec> RunConfig::parsed_inclusions() const {
  if (inclusions == "default") return default_inclusions();
  if (inclusions == "none" || inclusions.empty()) return {};
  std::vector<CircleSpec> circles;
  std::istringstream stream(inclusions);
  std::string item;
  while (std::getline(stream, item, '|')) {
    std::istringstream fields(item);
    std::string field;
    std::vector<double> numbers;
    while (std::getline(fields, field, ',')) {
      try {
        numbers.push_back(std::stod(field));
      } catch (...) {
        throw ConfigError("transport.inclusions: bad number '" + field + "'");
      }
    }
    if (numbers.size() != 3 || numbers[2] <= 0.0) {
      throw ConfigError("transport.inclusions: expected 'cx,cy,r' with r > 0, got '" +
                        item + "'");
    }
    circles.push_back({numbers[0], numbers[1], numbers[2]});
  }
  return circles;
}

std::vector<BasisFamily> RunConfig::selected_families() const {
  if (family == "pversion") return {BasisFamily::PVersion};
  if (family == "bspline") return {BasisFamily::Bspline};
  return {BasisFamily::PVersion, BasisFamily::Bspline};
}

}  // namespace fcm
