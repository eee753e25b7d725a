#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tensoreq/spectral.hpp"
#include "tensoreq/tensor3.hpp"

namespace tensoreq::oracle {

// Brute-force references for the iterative solvers. Everything here works on
// explicit dense matrices (one per Fourier slice, or the full Kronecker
// form) and shares no code with the solver loops.

/// Cap on n2*n3*l*n3 for materializing the Kronecker system.
inline constexpr std::size_t kMaxVecFormUnknowns = 2000;

/// C * X = D split into independent Fourier-slice systems
/// blocks[i] * X_hat[i] = rhs[i], optionally with the equivalent single
/// system (I_{l*n3} kron bdiag(C_hat)) vec(bdiag(X_hat)) = vec(bdiag(D_hat)).
struct MatricizedSystem {
  Dims coefficient_dims;
  Dims rhs_dims;
  std::vector<ComplexMatrix> blocks;
  std::vector<ComplexMatrix> rhs;
  std::optional<ComplexMatrix> vec_matrix;
  std::optional<Eigen::VectorXcd> vec_rhs;
};

/// Throws dimension_mismatch for incompatible C, D, and invalid_dimension
/// when the vec form is requested above kMaxVecFormUnknowns.
MatricizedSystem matricize(const Tensor3& c, const Tensor3& d, bool with_vec_form = false);

/// SVD pseudoinverse with singular values below rel_cutoff * sigma_max dropped.
ComplexMatrix pinv(const ComplexMatrix& a, double rel_cutoff = 1e-12);

/// Minimal-norm least-squares solution of every block system, each slice
/// solved independently.
std::vector<ComplexMatrix> solve_blocks(const MatricizedSystem& sys);

/// Diagonal blocks of the minimal-norm solution of the materialized vec form.
std::vector<ComplexMatrix> solve_vec_form(const MatricizedSystem& sys);

/// Per-slice pseudoinverse solution transformed back to a real tensor. The
/// minimal Frobenius-norm (least-squares) solution of C * X = D.
Tensor3 solve_minnorm(const Tensor3& c, const Tensor3& d);

/// Smallest achievable ||C * X - D||_F.
double residual_optimal(const Tensor3& c, const Tensor3& d);

/// Right-hand side (n1, l, n3) whose component outside the range of C is at
/// least 0.1 of its norm. Throws cannot_construct when every Fourier slice of
/// C has full row rank.
Tensor3 make_inconsistent(const Tensor3& c, std::size_t l, std::uint64_t seed);

/// Dense Kronecker product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace tensoreq::oracle
