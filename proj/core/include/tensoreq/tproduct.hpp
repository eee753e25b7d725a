#pragma once

#include "tensoreq/spectral.hpp"
#include "tensoreq/tensor3.hpp"

namespace tensoreq {

inline constexpr double kDefaultStructureTol = 1e-10;

/// T-product C * D for C (n1,n2,n3) and D (n2,l,n3), giving (n1,l,n3).
///
/// Computed in the Fourier domain: the leading half-spectrum slices are
/// multiplied pairwise, the rest follow by conjugate symmetry, and the
/// result is transformed back.
Tensor3 tprod(const Tensor3& c, const Tensor3& d);

/// Same product with the transform of C supplied by the caller, for loops
/// that apply one fixed coefficient tensor many times.
Tensor3 tprod(const SpectralTensor& c_hat, const Tensor3& d);

/// Slice-wise product of two real-origin spectra.
SpectralTensor spectral_product(const SpectralTensor& a, const SpectralTensor& b);

/// fold(bcirc(C) * unfold(D)) evaluated literally in real arithmetic.
/// Reference path only; O(n1*n2*l*n3^2).
Tensor3 tprod_naive(const Tensor3& c, const Tensor3& d);

/// ||C - C^T|| <= tol * (1 + ||C||). Requires square frontal slices.
bool is_t_symmetric(const Tensor3& c, double tol = kDefaultStructureTol);

/// T-symmetric and every Fourier slice Hermitian positive definite, with the
/// smallest eigenvalue above tol times the slice norm.
bool is_t_spd(const Tensor3& c, double tol = kDefaultStructureTol);

/// C^T * C + mu * I with mu = 1e-6 * max(||C||^2, 1). Always T-SPD; used to
/// build well-posed fixtures.
Tensor3 make_spd(const Tensor3& c);

}  // namespace tensoreq
