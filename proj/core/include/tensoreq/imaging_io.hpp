#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "tensoreq/random.hpp"
#include "tensoreq/tensor3.hpp"

namespace tensoreq {

// TensorFile layout, all integers and reals little-endian:
//
//   offset  size  field
//   0       8     magic "T3TENSOR"
//   8       2     version (u16) = 1
//   10      4     n1 (u32)
//   14      4     n2 (u32)
//   18      4     n3 (u32)
//   22      8*N   N = n1*n2*n3 IEEE-754 binary64 entries in storage order
//                 (slice-major, each frontal slice row-major)

inline constexpr char kTensorMagic[8] = {'T', '3', 'T', 'E', 'N', 'S', 'O', 'R'};
inline constexpr std::uint16_t kTensorFileVersion = 1;
inline constexpr std::size_t kTensorHeaderSize = 22;

void save_tensor(const std::filesystem::path& path, const Tensor3& t);
Tensor3 load_tensor(const std::filesystem::path& path);

/// Binary PGM (P5) or PPM (P6) with maxval <= 255. Grayscale loads as
/// (h, w, 1), color as (h, w, 3) with R, G, B in frontal slices 0, 1, 2.
Tensor3 load_image(const std::filesystem::path& path);

/// Writes P5 for one slice and P6 for three. Values are rounded to the
/// nearest integer and clamped to [0, 255].
void save_image(const std::filesystem::path& path, const Tensor3& image);

/// Every *.pgm in `dir`, sorted by file name, stacked as frames of an
/// (h, w, frames) tensor. All frames must be grayscale and equally sized.
Tensor3 load_frame_sequence(const std::filesystem::path& dir);

/// Writes frame k of `video` as <dir>/<prefix><k padded to 4 digits>.pgm.
void save_frame_sequence(const std::filesystem::path& dir, const Tensor3& video,
                         const std::string& prefix = "frame_");

/// True for .pgm / .ppm extensions (case-insensitive).
bool is_image_path(const std::filesystem::path& path);

/// load_image for image extensions, load_tensor otherwise.
Tensor3 load_any(const std::filesystem::path& path);
void save_any(const std::filesystem::path& path, const Tensor3& t);

/// Degradation model X_deg = C * X. C is (h, h, n3) and acts on the height
/// mode of an (h, w, n3) image.
Tensor3 degrade(const Tensor3& c, const Tensor3& image);

/// Mean squared error over all n1*n2*n3 entries.
double mse(const Tensor3& x, const Tensor3& y);

/// Peak signal-to-noise ratio for 8-bit data. Identical inputs give the
/// infinite variant instead of a division by zero.
class Psnr {
 public:
  static Psnr infinite() noexcept { return Psnr(true, 0.0); }
  static Psnr finite(double decibels) noexcept { return Psnr(false, decibels); }

  bool is_infinite() const noexcept { return infinite_; }
  /// +inf for the infinite variant.
  double decibels() const noexcept;
  /// "inf" or the value with 17 significant digits.
  std::string str() const;

 private:
  Psnr(bool infinite, double db) : infinite_(infinite), db_(db) {}
  bool infinite_;
  double db_;
};

Psnr psnr(const Tensor3& x, const Tensor3& y);

/// CSV with header `iteration,residual,relative_error`, one row per entry of
/// `residuals` (iteration numbers start at 1), reals printed with 17
/// significant digits. relative_error = residual / rhs_norm.
void write_history_csv(const std::filesystem::path& path, std::span<const double> residuals, double rhs_norm);

}  // namespace tensoreq
