#include "tensoreq/tproduct.hpp"

#include <algorithm>
#include <utility>

#include <fmt/format.h>

#include "tensoreq/error.hpp"
#include "tensoreq/parallel.hpp"

namespace tensoreq {
namespace {

void require_product_dims(const Dims& c, const Dims& d) {
  if (c.n2 != d.n1 || c.n3 != d.n3) {
    raise(Errc::dimension_mismatch, fmt::format("T-product of {} and {}", c.str(), d.str()));
  }
}

}  // namespace

SpectralTensor spectral_product(const SpectralTensor& a, const SpectralTensor& b) {
  require_product_dims(a.dims(), b.dims());
  const std::size_t n3 = a.n3();
  const std::size_t half = half_spectrum(n3);
  std::vector<ComplexMatrix> out(n3);
  const std::size_t work = a.dims().n1 * a.dims().n2 * b.dims().n2 * half;
  parallel_for(half, work, [&](std::size_t k) { out[k] = a.slice(k) * b.slice(k); });
  for (std::size_t k = half; k < n3; ++k) out[k] = out[n3 - k].conjugate();
  return SpectralTensor({a.dims().n1, b.dims().n2, n3}, std::move(out), a.origin_real() && b.origin_real());
}

Tensor3 tprod(const Tensor3& c, const Tensor3& d) {
  require_product_dims(c.dims(), d.dims());
  return idft_mode3(spectral_product(dft_mode3(c), dft_mode3(d)));
}

Tensor3 tprod(const SpectralTensor& c_hat, const Tensor3& d) {
  require_product_dims(c_hat.dims(), d.dims());
  return idft_mode3(spectral_product(c_hat, dft_mode3(d)));
}

Tensor3 tprod_naive(const Tensor3& c, const Tensor3& d) {
  require_product_dims(c.dims(), d.dims());
  const Matrix product = bcirc(c) * unfold(d);
  return fold(product, c.n3());
}

bool is_t_symmetric(const Tensor3& c, double tol) {
  if (c.n1() != c.n2()) {
    raise(Errc::non_square, fmt::format("is_t_symmetric: slices are {}x{}", c.n1(), c.n2()));
  }
  return fro_norm(c - transpose(c)) <= tol * (1.0 + fro_norm(c));
}

bool is_t_spd(const Tensor3& c, double tol) {
  if (!is_t_symmetric(c, tol)) return false;
  const SpectralTensor f = dft_mode3(c);
  for (const auto& s : f.slices()) {
    const double norm = s.norm();
    if ((s - s.adjoint()).norm() > tol * (1.0 + norm)) return false;
    const ComplexMatrix hermitian = 0.5 * (s + s.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) return false;
    if (eig.eigenvalues().minCoeff() <= tol * norm) return false;
  }
  return true;
}

Tensor3 make_spd(const Tensor3& c) {
  const double norm = fro_norm(c);
  const double mu = 1e-6 * std::max(norm * norm, 1.0);
  const Tensor3 gram = tprod(transpose(c), c);
  // Average with the transpose to remove rounding asymmetry.
  const Tensor3 symmetric = 0.5 * (gram + transpose(gram));
  return axpy(mu, identity(c.n2(), c.n3()), symmetric);
}

}  // namespace tensoreq
