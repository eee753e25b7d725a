#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tensoreq/tensor3.hpp"

namespace tensoreq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// n x n DFT matrix with entries w^(j*k), w = exp(-2*pi*i/n), 0-based.
struct DftMatrix {
  std::size_t n = 0;
  ComplexMatrix entries;
};

DftMatrix dft_matrix(std::size_t n);

/// Number of Fourier slices that carry independent information for a real
/// tensor: slices 0..n3/2. For even n3 this includes the self-conjugate
/// Nyquist slice n3/2.
constexpr std::size_t half_spectrum(std::size_t n3) noexcept { return n3 / 2 + 1; }

/// Mode-3 DFT image of a tensor: n3 complex n1 x n2 frontal slices.
///
/// When `origin_real()` is set the slices obey conjugate symmetry,
/// slice(k) == conj(slice(n3 - k)) for k = 1..n3-1.
class SpectralTensor {
 public:
  SpectralTensor(Dims dims, std::vector<ComplexMatrix> slices, bool origin_real);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t n3() const noexcept { return dims_.n3; }
  bool origin_real() const noexcept { return origin_real_; }

  const ComplexMatrix& slice(std::size_t k) const { return slices_.at(k); }
  const std::vector<ComplexMatrix>& slices() const noexcept { return slices_; }

  double fro_norm() const;

  /// Largest Frobenius-norm departure from conjugate symmetry over all slice
  /// pairs, including the imaginary parts of slice 0 and (even n3) the
  /// Nyquist slice.
  double symmetry_defect() const;

 private:
  Dims dims_;
  std::vector<ComplexMatrix> slices_;
  bool origin_real_;
};

/// DFT of every tube C(i1, i2, :). Slices 0..n3/2 are evaluated directly;
/// the rest are filled by conjugation, so the result is exactly symmetric.
SpectralTensor dft_mode3(const Tensor3& c);

/// Inverse of dft_mode3. Throws symmetry_violation when the input departs
/// from conjugate symmetry by more than 1e-8 relative, or when the inverse
/// leaves an imaginary residue above 1e-10 relative to the input norm.
Tensor3 idft_mode3(const SpectralTensor& f);

/// (n1*n3) x (n2*n3) block-diagonal matrix of the Fourier slices.
ComplexMatrix bdiag(const SpectralTensor& f);

}  // namespace tensoreq
