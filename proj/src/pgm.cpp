#include "fcm/pgm.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace fcm {
namespace {

// Next whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return token;
  }
  throw std::runtime_error("read_pgm: unexpected end of header");
}

int next_int(std::istream& in) { return std::stoi(next_token(in)); }

}  // namespace

std::vector<std::vector<uint8_t>> read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path.string());

  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5") {
    throw std::runtime_error("read_pgm: unsupported format " + magic);
  }
  const int width = next_int(in);
  const int height = next_int(in);
  const int maxval = next_int(in);
  if (width <= 0 || height <= 0 || maxval <= 0) {
    throw std::runtime_error("read_pgm: invalid dimensions");
  }

  std::vector<std::vector<uint8_t>> rows(height, std::vector<uint8_t>(width));
  const double threshold = 0.5 * maxval;
  if (magic == "P2") {
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        rows[r][c] = next_int(in) >= threshold ? 1 : 0;
      }
    }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        int value = in.get();
        if (bytes == 2) value = (value << 8) | in.get();
        if (!in) throw std::runtime_error("read_pgm: truncated pixel data");
        rows[r][c] = value >= threshold ? 1 : 0;
      }
    }
  }

  // Image rows are stored top-down; return them bottom-up.
  std::vector<std::vector<uint8_t>> grid(rows.rbegin(), rows.rend());
  return grid;
}

}  // namespace fcm
