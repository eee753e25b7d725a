#include "tensoreq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "tensoreq/error.hpp"
#include "tensoreq/parallel.hpp"

namespace tensoreq {
namespace {

constexpr double kSymmetryTol = 1e-8;
constexpr double kImagResidueTol = 1e-10;

// exp(-2*pi*i*m/n) for m = 0..n-1. Quarter turns are set exactly so the DC
// and Nyquist slices of a real tensor come out with zero imaginary part.
std::vector<Complex> twiddles(std::size_t n) {
  std::vector<Complex> w(n);
  for (std::size_t m = 0; m < n; ++m) {
    if ((4 * m) % n == 0) {
      static constexpr Complex quarter[] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
      w[m] = quarter[(4 * m) / n];
    } else {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
      w[m] = {std::cos(theta), -std::sin(theta)};
    }
  }
  return w;
}

}  // namespace

DftMatrix dft_matrix(std::size_t n) {
  if (n < 1) raise(Errc::invalid_dimension, "dft_matrix: order must be >= 1");
  const auto w = twiddles(n);
  DftMatrix f{n, ComplexMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      f.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = w[(j * k) % n];
    }
  }
  return f;
}

SpectralTensor::SpectralTensor(Dims dims, std::vector<ComplexMatrix> slices, bool origin_real)
    : dims_(dims), slices_(std::move(slices)), origin_real_(origin_real) {
  if (dims_.n1 < 1 || dims_.n2 < 1 || dims_.n3 < 1) {
    raise(Errc::invalid_dimension, fmt::format("spectral tensor dims {}", dims_.str()));
  }
  if (slices_.size() != dims_.n3) {
    raise(Errc::invalid_dimension,
          fmt::format("spectral tensor has {} slices, dims {}", slices_.size(), dims_.str()));
  }
  for (const auto& s : slices_) {
    if (static_cast<std::size_t>(s.rows()) != dims_.n1 || static_cast<std::size_t>(s.cols()) != dims_.n2) {
      raise(Errc::invalid_dimension, fmt::format("spectral slice is {}x{}, dims {}", s.rows(), s.cols(), dims_.str()));
    }
  }
}

double SpectralTensor::fro_norm() const {
  double sum = 0.0;
  for (const auto& s : slices_) sum += s.squaredNorm();
  return std::sqrt(sum);
}

double SpectralTensor::symmetry_defect() const {
  const std::size_t n3 = dims_.n3;
  double defect = slices_[0].imag().norm();
  for (std::size_t k = 1; k < n3; ++k) {
    defect = std::max(defect, (slices_[k] - slices_[n3 - k].conjugate()).norm());
  }
  return defect;
}

SpectralTensor dft_mode3(const Tensor3& c) {
  const std::size_t n3 = c.n3();
  const std::size_t half = half_spectrum(n3);
  const auto w = twiddles(n3);
  const auto rows = static_cast<Eigen::Index>(c.n1());
  const auto cols = static_cast<Eigen::Index>(c.n2());

  std::vector<ComplexMatrix> slices(n3);
  parallel_for(half, c.size() * n3, [&](std::size_t k) {
    Matrix re = Matrix::Zero(rows, cols);
    Matrix im = Matrix::Zero(rows, cols);
    for (std::size_t j = 0; j < n3; ++j) {
      const Complex t = w[(j * k) % n3];
      if (t.real() != 0.0) re.noalias() += t.real() * c.slice(j);
      if (t.imag() != 0.0) im.noalias() += t.imag() * c.slice(j);
    }
    ComplexMatrix s(rows, cols);
    s.real() = re;
    s.imag() = im;
    slices[k] = std::move(s);
  });
  for (std::size_t k = half; k < n3; ++k) slices[k] = slices[n3 - k].conjugate();
  return SpectralTensor(c.dims(), std::move(slices), true);
}

Tensor3 idft_mode3(const SpectralTensor& f) {
  const double norm = f.fro_norm();
  const double defect = f.symmetry_defect();
  if (defect > kSymmetryTol * norm) {
    raise(Errc::symmetry_violation,
          fmt::format("conjugate symmetry defect {:.3e} exceeds {:.1e} of norm {:.3e}", defect, kSymmetryTol, norm));
  }

  const Dims dims = f.dims();
  const std::size_t n3 = dims.n3;
  const auto w = twiddles(n3);
  const double inv_n = 1.0 / static_cast<double>(n3);
  const auto rows = static_cast<Eigen::Index>(dims.n1);
  const auto cols = static_cast<Eigen::Index>(dims.n2);

  std::vector<double> data(dims.size());
  std::vector<double> residue(n3, 0.0);
  parallel_for(n3, dims.size() * n3, [&](std::size_t j) {
    Matrix re = Matrix::Zero(rows, cols);
    Matrix im = Matrix::Zero(rows, cols);
    for (std::size_t k = 0; k < n3; ++k) {
      // conj(w^(jk)) = w^(-jk)
      const Complex t = std::conj(w[(j * k) % n3]);
      const auto& s = f.slice(k);
      re.noalias() += t.real() * s.real() - t.imag() * s.imag();
      im.noalias() += t.real() * s.imag() + t.imag() * s.real();
    }
    re *= inv_n;
    residue[j] = inv_n * im.cwiseAbs().maxCoeff();
    std::copy(re.data(), re.data() + re.size(), data.begin() + static_cast<std::ptrdiff_t>(j * dims.slice_size()));
  });

  const double worst = *std::max_element(residue.begin(), residue.end());
  if (worst > kImagResidueTol * norm) {
    raise(Errc::symmetry_violation,
          fmt::format("inverse transform left imaginary residue {:.3e} (norm {:.3e})", worst, norm));
  }
  return Tensor3(dims, std::move(data));
}

ComplexMatrix bdiag(const SpectralTensor& f) {
  const auto rows = static_cast<Eigen::Index>(f.dims().n1);
  const auto cols = static_cast<Eigen::Index>(f.dims().n2);
  const auto n3 = static_cast<Eigen::Index>(f.n3());
  ComplexMatrix out = ComplexMatrix::Zero(rows * n3, cols * n3);
  for (Eigen::Index k = 0; k < n3; ++k) {
    out.block(k * rows, k * cols, rows, cols) = f.slice(static_cast<std::size_t>(k));
  }
  return out;
}

}  // namespace tensoreq
