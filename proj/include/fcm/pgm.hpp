#ifndef FCM_PGM_HPP
#define FCM_PGM_HPP

#include <filesystem>
#include <vector>

namespace fcm {

/// Reads a portable graymap (ASCII P2 or binary P5) and thresholds it at half
/// the maximum value: pixel/maxval >= 0.5 maps to 1 (physical material).
/// Rows are returned bottom-up, i.e. result[0] is the bottom image row.
std::vector<std::vector<uint8_t>> read_pgm(const std::filesystem::path& path);

}  // namespace fcm

#endif
