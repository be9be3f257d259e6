// Portable graymap (PGM) input and output.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyden/geometry.hpp"

namespace hyden {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrayImage {
  Matrix values;   // rows x cols
  int maxval = 0;  // maxval of the source file
};

/// Reads an ASCII (P2) or binary (P5) graymap with 8- or 16-bit samples.
/// Throws IoError on unreadable or malformed files.
GrayImage read_pgm(const std::filesystem::path& path);

/// Intensities divided by maxval.
Matrix read_pgm_unit(const std::filesystem::path& path);

/// Affine display mapping value = offset + scale * gray.
struct DisplayScale {
  double offset = 0.0;
  double scale = 1.0;
};

/// Writes a binary 16-bit graymap of `values`, mapping [min, max] onto
/// [0, 65535], and a sidecar `<path>.scale.txt` holding the inverse mapping.
/// A constant image is written as all zeros with scale 0.
DisplayScale write_pgm16(const std::filesystem::path& path, const Matrix& values);

/// Raw 8-bit binary graymap of `values` clipped to [0, 1]. No sidecar.
void write_pgm8_unit(const std::filesystem::path& path, const Matrix& values);

/// The .pgm files of a directory in lexicographic order.
std::vector<std::filesystem::path> list_pgm(const std::filesystem::path& dir);

}  // namespace hyden
