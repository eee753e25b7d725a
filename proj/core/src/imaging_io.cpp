#include "tensoreq/imaging_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "tensoreq/error.hpp"
#include "tensoreq/tproduct.hpp"

namespace tensoreq {
namespace {

namespace fs = std::filesystem;

template <typename T>
void put_le(std::vector<char>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<char>(bits & 0xFFu));
    bits = static_cast<U>(bits >> 8);
  }
}

template <typename T>
T get_le(const char* in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  U bits = 0;
  for (std::size_t i = sizeof(U); i-- > 0;) {
    bits = static_cast<U>((bits << 8) | static_cast<unsigned char>(in[i]));
  }
  return std::bit_cast<T>(bits);
}

std::vector<char> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_failure, fmt::format("cannot open '{}' for reading", path.string()));
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) raise(Errc::io_failure, fmt::format("error reading '{}'", path.string()));
  return bytes;
}

void write_file(const fs::path& path, const std::vector<char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::io_failure, fmt::format("cannot open '{}' for writing", path.string()));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::io_failure, fmt::format("error writing '{}'", path.string()));
}

// Netpbm header reader: magic, then width, height, maxval as ASCII decimals
// separated by whitespace, with '#' comments running to end of line. A single
// whitespace byte separates maxval from the raster.
class PnmHeader {
 public:
  explicit PnmHeader(const std::vector<char>& bytes) : bytes_(bytes) {}

  std::string magic() {
    if (bytes_.size() < 2) raise(Errc::malformed_header, "file too short for a netpbm header");
    pos_ = 2;
    return {bytes_.data(), 2};
  }

  std::size_t number(const char* field) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > (1u << 24)) raise(Errc::malformed_header, fmt::format("{} is too large", field));
      ++pos_;
      ++digits;
    }
    if (digits == 0) raise(Errc::malformed_header, fmt::format("expected {} in netpbm header", field));
    return value;
  }

  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      raise(Errc::malformed_header, "missing whitespace before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<char>& bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t to_pixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext;
}

}  // namespace

void save_tensor(const fs::path& path, const Tensor3& t) {
  const Dims& d = t.dims();
  constexpr auto kU32Max = std::numeric_limits<std::uint32_t>::max();
  if (d.n1 > kU32Max || d.n2 > kU32Max || d.n3 > kU32Max) {
    raise(Errc::invalid_dimension, fmt::format("dims {} do not fit the file format", d.str()));
  }
  std::vector<char> bytes(std::begin(kTensorMagic), std::end(kTensorMagic));
  bytes.reserve(kTensorHeaderSize + 8 * t.size());
  put_le(bytes, kTensorFileVersion);
  put_le(bytes, static_cast<std::uint32_t>(d.n1));
  put_le(bytes, static_cast<std::uint32_t>(d.n2));
  put_le(bytes, static_cast<std::uint32_t>(d.n3));
  for (double v : t.data()) put_le(bytes, v);
  write_file(path, bytes);
}

Tensor3 load_tensor(const fs::path& path) {
  const std::vector<char> bytes = read_file(path);
  if (bytes.size() < sizeof(kTensorMagic) || std::memcmp(bytes.data(), kTensorMagic, sizeof(kTensorMagic)) != 0) {
    raise(Errc::bad_magic, fmt::format("'{}' is not a tensor file", path.string()));
  }
  if (bytes.size() < kTensorHeaderSize) raise(Errc::truncated_payload, fmt::format("'{}' header is truncated", path.string()));
  const auto version = get_le<std::uint16_t>(bytes.data() + 8);
  if (version != kTensorFileVersion) {
    raise(Errc::version_unsupported, fmt::format("'{}' has version {}, expected {}", path.string(), version, kTensorFileVersion));
  }
  const Dims dims{get_le<std::uint32_t>(bytes.data() + 10), get_le<std::uint32_t>(bytes.data() + 14),
                  get_le<std::uint32_t>(bytes.data() + 18)};
  if (dims.n1 == 0 || dims.n2 == 0 || dims.n3 == 0) {
    raise(Errc::invalid_dimension, fmt::format("'{}' declares dims {}", path.string(), dims.str()));
  }
  const std::size_t expected = kTensorHeaderSize + 8 * dims.size();
  if (bytes.size() < expected) {
    raise(Errc::truncated_payload,
          fmt::format("'{}' holds {} bytes, dims {} need {}", path.string(), bytes.size(), dims.str(), expected));
  }
  std::vector<double> data(dims.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = get_le<double>(bytes.data() + kTensorHeaderSize + 8 * i);
  return Tensor3(dims, std::move(data));
}

Tensor3 load_image(const fs::path& path) {
  const std::vector<char> bytes = read_file(path);
  PnmHeader header(bytes);
  const std::string magic = header.magic();
  std::size_t channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    raise(Errc::unsupported_format, fmt::format("'{}' is not binary PGM/PPM", path.string()));
  }
  const std::size_t width = header.number("width");
  const std::size_t height = header.number("height");
  const std::size_t maxval = header.number("maxval");
  if (width == 0 || height == 0) raise(Errc::malformed_header, "zero image size");
  if (maxval == 0 || maxval > 255) {
    raise(Errc::unsupported_format, fmt::format("maxval {} is not 8-bit", maxval));
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t needed = width * height * channels;
  if (bytes.size() < offset + needed) raise(Errc::malformed_header, "raster is shorter than the header declares");

  const Dims dims{height, width, channels};
  std::vector<double> data(dims.size());
  const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + offset);
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      for (std::size_t c = 0; c < channels; ++c) {
        data[c * dims.slice_size() + i * width + j] = raster[(i * width + j) * channels + c];
      }
    }
  }
  return Tensor3(dims, std::move(data));
}

void save_image(const fs::path& path, const Tensor3& image) {
  const std::size_t channels = image.n3();
  if (channels != 1 && channels != 3) {
    raise(Errc::unsupported_format, fmt::format("cannot store {} channels as PGM/PPM", channels));
  }
  const std::size_t height = image.n1();
  const std::size_t width = image.n2();
  const std::string header = fmt::format("{}\n{} {}\n255\n", channels == 1 ? "P5" : "P6", width, height);
  std::vector<char> bytes(header.begin(), header.end());
  bytes.reserve(header.size() + image.size());
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      for (std::size_t c = 0; c < channels; ++c) bytes.push_back(static_cast<char>(to_pixel(image(i, j, c))));
    }
  }
  write_file(path, bytes);
}

Tensor3 load_frame_sequence(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && lower_extension(entry.path()) == ".pgm") files.push_back(entry.path());
  }
  if (ec) raise(Errc::io_failure, fmt::format("cannot list '{}': {}", dir.string(), ec.message()));
  if (files.empty()) raise(Errc::io_failure, fmt::format("no .pgm frames in '{}'", dir.string()));
  std::sort(files.begin(), files.end());

  std::vector<Matrix> frames;
  frames.reserve(files.size());
  for (const auto& f : files) {
    const Tensor3 frame = load_image(f);
    if (frame.n3() != 1) raise(Errc::unsupported_format, fmt::format("frame '{}' is not grayscale", f.string()));
    frames.emplace_back(frame.slice(0));
  }
  return from_slices(frames);
}

void save_frame_sequence(const fs::path& dir, const Tensor3& video, const std::string& prefix) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(Errc::io_failure, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  for (std::size_t k = 0; k < video.n3(); ++k) {
    save_image(dir / fmt::format("{}{:04}.pgm", prefix, k), from_slices({Matrix(video.slice(k))}));
  }
}

bool is_image_path(const fs::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".pgm" || ext == ".ppm";
}

Tensor3 load_any(const fs::path& path) { return is_image_path(path) ? load_image(path) : load_tensor(path); }

void save_any(const fs::path& path, const Tensor3& t) {
  if (is_image_path(path)) {
    save_image(path, t);
  } else {
    save_tensor(path, t);
  }
}

Tensor3 degrade(const Tensor3& c, const Tensor3& image) {
  if (c.n1() != c.n2() || c.n2() != image.n1() || c.n3() != image.n3()) {
    raise(Errc::dimension_mismatch,
          fmt::format("degradation tensor {} does not act on image {}", c.dims().str(), image.dims().str()));
  }
  return tprod(c, image);
}

double mse(const Tensor3& x, const Tensor3& y) {
  if (x.dims() != y.dims()) {
    raise(Errc::dimension_mismatch, fmt::format("mse of {} and {}", x.dims().str(), y.dims().str()));
  }
  const double err = fro_norm(x - y);
  return err * err / static_cast<double>(x.size());
}

double Psnr::decibels() const noexcept { return infinite_ ? std::numeric_limits<double>::infinity() : db_; }

std::string Psnr::str() const { return infinite_ ? std::string("inf") : fmt::format("{:.17g}", db_); }

Psnr psnr(const Tensor3& x, const Tensor3& y) {
  const double m = mse(x, y);
  if (m == 0.0) return Psnr::infinite();
  return Psnr::finite(10.0 * std::log10(255.0 * 255.0 / m));
}

void write_history_csv(const fs::path& path, std::span<const double> residuals, double rhs_norm) {
  std::string text = "iteration,residual,relative_error\n";
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    const double rel = rhs_norm > 0.0 ? residuals[i] / rhs_norm : 0.0;
    text += fmt::format("{},{:.17g},{:.17g}\n", i + 1, residuals[i], rel);
  }
  write_file(path, std::vector<char>(text.begin(), text.end()));
}

}  // namespace tensoreq
