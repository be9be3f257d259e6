#include "hyden/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>

namespace hyden {

namespace fs = std::filesystem;

namespace {

class HeaderReader {
 public:
  HeaderReader(const std::string& data, const fs::path& path) : data_(data), path_(path) {}

  long next_int() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 9) fail("integer out of range");
    return std::stol(data_.substr(start, pos_ - start));
  }

  // The single whitespace byte separating the header from binary samples.
  void skip_one_space() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      fail("missing whitespace after header");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError(path_.string() + ": " + what + " at byte " + std::to_string(pos_));
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& data_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  return out;
}

}  // namespace

GrayImage read_pgm(const fs::path& path) {
  const std::string data = slurp(path);
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
    throw IoError(path.string() + ": not a P2/P5 graymap");
  }
  const bool binary = data[1] == '5';
  const std::string body = data.substr(2);
  HeaderReader hdr(body, path);
  const long cols = hdr.next_int();
  const long rows = hdr.next_int();
  const long maxval = hdr.next_int();
  if (cols <= 0 || rows <= 0) hdr.fail("empty image");
  if (maxval <= 0 || maxval > 65535) hdr.fail("maxval must be in [1, 65535]");

  GrayImage img{Matrix(rows, cols), static_cast<int>(maxval)};
  if (binary) {
    hdr.skip_one_space();
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    const std::size_t need = static_cast<std::size_t>(rows * cols) * bytes;
    if (body.size() - hdr.pos() < need) hdr.fail("truncated sample data");
    const auto* p = reinterpret_cast<const unsigned char*>(body.data() + hdr.pos());
    for (long i = 0; i < rows; ++i) {
      for (long j = 0; j < cols; ++j) {
        long v = *p++;
        if (bytes == 2) v = (v << 8) | *p++;
        if (v > maxval) throw IoError(path.string() + ": sample exceeds maxval");
        img.values(i, j) = static_cast<double>(v);
      }
    }
  } else {
    for (long i = 0; i < rows; ++i) {
      for (long j = 0; j < cols; ++j) {
        const long v = hdr.next_int();
        if (v > maxval) hdr.fail("sample exceeds maxval");
        img.values(i, j) = static_cast<double>(v);
      }
    }
  }
  return img;
}

Matrix read_pgm_unit(const fs::path& path) {
  GrayImage img = read_pgm(path);
  return img.values / static_cast<double>(img.maxval);
}

DisplayScale write_pgm16(const fs::path& path, const Matrix& values) {
  if (values.size() == 0) throw IoError(path.string() + ": refusing to write an empty image");
  if (!values.allFinite()) throw IoError(path.string() + ": non-finite pixel values");
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  const DisplayScale ds{lo, hi > lo ? (hi - lo) / 65535.0 : 0.0};

  std::ofstream out = open_out(path);
  out << "P5\n" << values.cols() << ' ' << values.rows() << "\n65535\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(values.cols()) * 2);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double g = ds.scale > 0.0 ? std::round((values(i, j) - lo) / ds.scale) : 0.0;
      const auto v = static_cast<std::uint16_t>(std::clamp(g, 0.0, 65535.0));
      row[2 * static_cast<std::size_t>(j)] = static_cast<unsigned char>(v >> 8);
      row[2 * static_cast<std::size_t>(j) + 1] = static_cast<unsigned char>(v & 0xff);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError(path.string() + ": write failed");

  fs::path side = path;
  side += ".scale.txt";
  std::ofstream s = open_out(side);
  char buf[128];
  std::snprintf(buf, sizeof buf, "offset = %.17g\nscale = %.17g\n", ds.offset, ds.scale);
  s << buf;
  if (!s) throw IoError(side.string() + ": write failed");
  return ds;
}

void write_pgm8_unit(const fs::path& path, const Matrix& values) {
  std::ofstream out = open_out(path);
  out << "P5\n" << values.cols() << ' ' << values.rows() << "\n255\n";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double g = std::round(std::clamp(values(i, j), 0.0, 1.0) * 255.0);
      out.put(static_cast<char>(static_cast<unsigned char>(g)));
    }
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<fs::path> list_pgm(const fs::path& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw IoError(dir.string() + ": cannot list directory");
  std::vector<fs::path> out;
  for (const auto& entry : it) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hyden
