#include "tensoreq/oracle.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tensoreq/error.hpp"
#include "tensoreq/random.hpp"
#include "tensoreq/tproduct.hpp"

namespace tensoreq::oracle {
namespace {

using Index = Eigen::Index;

constexpr double kRankCutoff = 1e-12;

void require_system_dims(const Tensor3& c, const Tensor3& d) {
  if (c.n1() != d.n1() || c.n3() != d.n3()) {
    raise(Errc::dimension_mismatch, fmt::format("oracle: coefficient {} and right-hand side {}", c.dims().str(),
                                                d.dims().str()));
  }
}

std::size_t numerical_rank(const Eigen::VectorXd& sigma) {
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > kRankCutoff * sigma(0)) ++r;
  }
  return r;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

MatricizedSystem matricize(const Tensor3& c, const Tensor3& d, bool with_vec_form) {
  require_system_dims(c, d);
  const SpectralTensor c_hat = dft_mode3(c);
  const SpectralTensor d_hat = dft_mode3(d);
  MatricizedSystem sys{c.dims(), d.dims(), c_hat.slices(), d_hat.slices(), std::nullopt, std::nullopt};
  if (with_vec_form) {
    const std::size_t unknowns = c.n2() * c.n3() * d.n2() * d.n3();
    if (unknowns > kMaxVecFormUnknowns) {
      raise(Errc::invalid_dimension,
            fmt::format("vec form with {} unknowns exceeds the limit of {}", unknowns, kMaxVecFormUnknowns));
    }
    const auto identity = ComplexMatrix::Identity(static_cast<Index>(d.n2() * d.n3()),
                                                  static_cast<Index>(d.n2() * d.n3()));
    sys.vec_matrix = kron(identity, bdiag(c_hat));
    const ComplexMatrix d_bar = bdiag(d_hat);
    sys.vec_rhs = Eigen::Map<const Eigen::VectorXcd>(d_bar.data(), d_bar.size());
  }
  return sys;
}

ComplexMatrix pinv(const ComplexMatrix& a, double rel_cutoff) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::VectorXcd inv_sigma = Eigen::VectorXcd::Zero(sigma.size());
  const double cutoff = sigma.size() > 0 ? rel_cutoff * sigma(0) : 0.0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff && sigma(i) > 0.0) inv_sigma(i) = 1.0 / sigma(i);
  }
  return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().adjoint();
}

std::vector<ComplexMatrix> solve_blocks(const MatricizedSystem& sys) {
  std::vector<ComplexMatrix> x(sys.blocks.size());
  for (std::size_t i = 0; i < sys.blocks.size(); ++i) x[i] = pinv(sys.blocks[i]) * sys.rhs[i];
  return x;
}

std::vector<ComplexMatrix> solve_vec_form(const MatricizedSystem& sys) {
  if (!sys.vec_matrix || !sys.vec_rhs) raise(Errc::invalid_dimension, "vec form was not materialized");
  const ComplexMatrix& a = *sys.vec_matrix;
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
  cod.setThreshold(kRankCutoff);
  const Eigen::VectorXcd v = cod.solve(*sys.vec_rhs);

  const auto n2 = static_cast<Index>(sys.coefficient_dims.n2);
  const auto n3 = static_cast<Index>(sys.coefficient_dims.n3);
  const auto l = static_cast<Index>(sys.rhs_dims.n2);
  // vec() stacks columns of the (n2*n3) x (l*n3) matrix bdiag(X_hat).
  const Eigen::Map<const ComplexMatrix> x_bar(v.data(), n2 * n3, l * n3);
  std::vector<ComplexMatrix> blocks(static_cast<std::size_t>(n3));
  for (Index k = 0; k < n3; ++k) blocks[static_cast<std::size_t>(k)] = x_bar.block(k * n2, k * l, n2, l);
  return blocks;
}

Tensor3 solve_minnorm(const Tensor3& c, const Tensor3& d) {
  const MatricizedSystem sys = matricize(c, d);
  SpectralTensor x_hat({c.n2(), d.n2(), c.n3()}, solve_blocks(sys), true);
  return idft_mode3(x_hat);
}

double residual_optimal(const Tensor3& c, const Tensor3& d) {
  const MatricizedSystem sys = matricize(c, d);
  const auto x = solve_blocks(sys);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += (sys.blocks[i] * x[i] - sys.rhs[i]).squaredNorm();
  return std::sqrt(sum / static_cast<double>(c.n3()));
}

Tensor3 make_inconsistent(const Tensor3& c, std::size_t l, std::uint64_t seed) {
  if (l < 1) raise(Errc::invalid_dimension, "make_inconsistent: l must be >= 1");
  const std::size_t n1 = c.n1();
  const std::size_t n3 = c.n3();
  const std::size_t half = half_spectrum(n3);
  const SpectralTensor c_hat = dft_mode3(c);
  NormalGenerator gen(seed);

  std::vector<ComplexMatrix> perp(n3);
  bool any_complement = false;
  for (std::size_t k = 0; k < half; ++k) {
    Eigen::JacobiSVD<ComplexMatrix> svd(c_hat.slice(k), Eigen::ComputeFullU);
    const std::size_t rank = numerical_rank(svd.singularValues());
    const bool real_slice = (k == 0) || (2 * k == n3);
    ComplexMatrix g(static_cast<Index>(n1), static_cast<Index>(l));
    for (Index i = 0; i < g.size(); ++i) g(i) = real_slice ? Complex(gen(), 0.0) : Complex(gen(), gen());
    if (rank < n1) {
      any_complement = true;
      const auto u_perp = svd.matrixU().rightCols(static_cast<Index>(n1 - rank));
      perp[k] = u_perp * (u_perp.adjoint() * g);
      if (real_slice) perp[k] = perp[k].real().cast<Complex>();
    } else {
      perp[k] = ComplexMatrix::Zero(static_cast<Index>(n1), static_cast<Index>(l));
    }
  }
  if (!any_complement) {
    raise(Errc::cannot_construct, fmt::format("every Fourier slice of {} has full row rank", c.dims().str()));
  }
  for (std::size_t k = half; k < n3; ++k) perp[k] = perp[n3 - k].conjugate();
  const Tensor3 d_perp = idft_mode3(SpectralTensor({n1, l, n3}, std::move(perp), true));
  const double perp_norm = fro_norm(d_perp);
  if (perp_norm == 0.0) raise(Errc::cannot_construct, "range complement projection vanished");

  const Tensor3 d_range = tprod(c, gaussian_tensor({c.n2(), l, n3}, seed ^ 0x9e3779b97f4a7c15ULL));
  const double range_norm = fro_norm(d_range);
  if (range_norm == 0.0) return d_perp;
  return axpy(perp_norm / range_norm, d_range, d_perp);
}

}  // namespace tensoreq::oracle
