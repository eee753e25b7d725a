#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace tensoreq;
using tensoreq::check::Draw;
using tensoreq::check::random_tensor;

namespace {

// Right-singular vectors spanning the null space of a wide block.
ComplexMatrix null_space(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const auto rank = static_cast<Eigen::Index>((svd.singularValues().array() > 1e-12 * svd.singularValues()(0)).count());
  return svd.matrixV().rightCols(a.cols() - rank);
}

}  // namespace

TEST(Matricize, Structure) {
  Draw draw(71);
  const Tensor3 c = random_tensor(draw, {4, 3, 5});
  const Tensor3 d = random_tensor(draw, {4, 2, 5});
  const oracle::MatricizedSystem sys = oracle::matricize(c, d);
  ASSERT_EQ(sys.blocks.size(), 5u);
  for (const auto& b : sys.blocks) {
    EXPECT_EQ(b.rows(), 4);
    EXPECT_EQ(b.cols(), 3);
  }
  EXPECT_FALSE(sys.vec_matrix.has_value());

  const Tensor3 c1 = random_tensor(draw, {3, 2, 1});
  const auto one = oracle::matricize(c1, random_tensor(draw, {3, 1, 1}));
  ASSERT_EQ(one.blocks.size(), 1u);
  EXPECT_EQ(one.blocks[0].real(), Eigen::MatrixXd(c1.slice(0)));

  EXPECT_ERRC(oracle::matricize(c, random_tensor(draw, {3, 2, 5})), Errc::dimension_mismatch);
}

TEST(Matricize, BlockSolvesReassemble) {
  Draw draw(72);
  const Tensor3 c = random_tensor(draw, {3, 5, 4});
  const Tensor3 d = tprod(c, random_tensor(draw, {5, 2, 4}));
  const auto sys = oracle::matricize(c, d);
  const Tensor3 x = idft_mode3(SpectralTensor({5, 2, 4}, oracle::solve_blocks(sys), true));
  EXPECT_LE(residual(c, x, d), 1e-10 * (1 + fro_norm(d)));
}

TEST(Matricize, VecFormAgreesWithBlocks) {
  Draw draw(73);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n3 = draw.index(1, 4);
    const Tensor3 c = random_tensor(draw, {draw.index(1, 4), draw.index(1, 4), n3});
    const Tensor3 d = random_tensor(draw, {c.n1(), draw.index(1, 3), n3});
    const auto sys = oracle::matricize(c, d, true);
    ASSERT_TRUE(sys.vec_matrix.has_value());
    const auto l = static_cast<Eigen::Index>(d.n2());
    EXPECT_EQ(sys.vec_matrix->rows(), static_cast<Eigen::Index>(c.n1() * n3) * l * static_cast<Eigen::Index>(n3));
    EXPECT_EQ(sys.vec_matrix->cols(), static_cast<Eigen::Index>(c.n2() * n3) * l * static_cast<Eigen::Index>(n3));
    const auto by_vec = oracle::solve_vec_form(sys);
    const auto by_block = oracle::solve_blocks(sys);
    for (std::size_t k = 0; k < n3; ++k) EXPECT_LE(check::complex_diff(by_vec[k], by_block[k]), 1e-8);
  }
}

TEST(Matricize, VecFormSizeGuard) {
  const Tensor3 c = ones(4, 10, 10);
  EXPECT_ERRC(oracle::matricize(c, ones(4, 3, 10), true), Errc::invalid_dimension);
  EXPECT_ERRC(oracle::solve_vec_form(oracle::matricize(ones(2, 2, 2), ones(2, 1, 2))), Errc::invalid_dimension);
}

TEST(Pinv, MoorePenroseConditions) {
  Draw draw(74);
  const Tensor3 t = random_tensor(draw, {4, 6, 3});
  const ComplexMatrix a = dft_mode3(t).slice(1);
  const ComplexMatrix p = oracle::pinv(a);
  EXPECT_LE((a * p * a - a).norm(), 1e-12 * a.norm());
  EXPECT_LE((p * a * p - p).norm(), 1e-12 * p.norm());
  EXPECT_LE(((a * p).adjoint() - a * p).norm(), 1e-12);
  EXPECT_LE(((p * a).adjoint() - p * a).norm(), 1e-12);
}

TEST(SolveMinnorm, Identity) {
  Draw draw(75);
  const Tensor3 d = random_tensor(draw, {3, 2, 4});
  EXPECT_LE(max_abs_diff(oracle::solve_minnorm(identity(3, 4), d), d), 1e-12);
}

TEST(SolveMinnorm, BeatsEveryParticularSolution) {
  Draw draw(76);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n3 = draw.index(1, 4);
    const Tensor3 c = random_tensor(draw, {draw.index(1, 3), draw.index(4, 6), n3});
    const Tensor3 d = tprod(c, random_tensor(draw, {c.n2(), 2, n3}));
    const Tensor3 x = oracle::solve_minnorm(c, d);
    ASSERT_LE(residual(c, x, d), 1e-10 * (1 + fro_norm(d)));

    // Particular solutions: add real null-space components per Fourier slice.
    const SpectralTensor x_hat = dft_mode3(x);
    const SpectralTensor c_hat = dft_mode3(c);
    std::vector<ComplexMatrix> shifted = x_hat.slices();
    for (std::size_t k = 0; k < half_spectrum(n3); ++k) {
      const ComplexMatrix n = null_space(c_hat.slice(k));
      ComplexMatrix coeff(n.cols(), 2);
      for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = Complex(draw.real(-1, 1), draw.real(-1, 1));
      ComplexMatrix add = n * coeff;
      if (k == 0 || 2 * k == n3) add = add.real().cast<Complex>();
      shifted[k] += add;
      if (k != 0 && 2 * k != n3) shifted[n3 - k] = shifted[k].conjugate();
    }
    const Tensor3 other = idft_mode3(SpectralTensor(x.dims(), shifted, true));
    EXPECT_LE(residual(c, other, d), 1e-9 * (1 + fro_norm(d)));
    EXPECT_LE(fro_norm(x), fro_norm(other) + 1e-12);
  }
}

TEST(SolveMinnorm, AgreesWithConsistentSolver) {
  Draw draw(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n3 = draw.index(1, 4);
    const Tensor3 c = random_tensor(draw, {draw.index(1, 6), draw.index(1, 5), n3});
    const Tensor3 d = tprod(c, random_tensor(draw, {c.n2(), draw.index(1, 3), n3}));
    const Tensor3 ref = oracle::solve_minnorm(c, d);
    const Solution s = solve_consistent(c, d, check::config(1e-12, true));
    EXPECT_LE(fro_norm(s.x - ref), 1e-6 * (1 + fro_norm(ref))) << c.dims().str();
    EXPECT_LE(std::abs(fro_norm(s.x) - fro_norm(ref)), 1e-6 * (1 + fro_norm(ref)));
  }
}

TEST(SolveMinnorm, SolutionSpectrumIsConjugateSymmetric) {
  Draw draw(78);
  const Tensor3 c = random_tensor(draw, {3, 4, 6});
  const Tensor3 d = random_tensor(draw, {3, 2, 6});
  const auto blocks = oracle::solve_blocks(oracle::matricize(c, d));
  for (std::size_t k = 1; k < 6; ++k) EXPECT_LE(check::complex_diff(blocks[k], blocks[6 - k].conjugate()), 1e-10);
  EXPECT_LE(blocks[0].imag().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(blocks[3].imag().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ResidualOptimal, ConsistentAndOrthogonal) {
  Draw draw(79);
  const Tensor3 c = random_tensor(draw, {5, 3, 3});
  const Tensor3 d = tprod(c, random_tensor(draw, {3, 2, 3}));
  EXPECT_LE(oracle::residual_optimal(c, d), 1e-10 * fro_norm(d));

  // Strip the range component: what is left is orthogonal to the range.
  const Tensor3 raw = random_tensor(draw, {5, 2, 3});
  const Tensor3 perp = raw - tprod(c, oracle::solve_minnorm(c, raw));
  EXPECT_NEAR(oracle::residual_optimal(c, perp), fro_norm(perp), 1e-10 * fro_norm(perp));
}

TEST(MakeInconsistent, Properties) {
  Draw draw(80);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n2 = draw.index(1, 4);
    const Tensor3 c = random_tensor(draw, {n2 + draw.index(1, 3), n2, draw.index(1, 4)});
    const Tensor3 d = oracle::make_inconsistent(c, 2, draw.seed());
    EXPECT_EQ(d.dims(), (Dims{c.n1(), 2, c.n3()}));
    EXPECT_GT(oracle::residual_optimal(c, d), 0.1 * fro_norm(d));
  }
  // Rank-deficient square slices also leave room outside the range.
  const Tensor3 low_rank = tprod(random_tensor(draw, {4, 2, 3}), random_tensor(draw, {2, 4, 3}));
  const Tensor3 d = oracle::make_inconsistent(low_rank, 1, 5);
  EXPECT_GT(oracle::residual_optimal(low_rank, d), 0.1 * fro_norm(d));
}

TEST(MakeInconsistent, Errors) {
  Draw draw(81);
  EXPECT_ERRC(oracle::make_inconsistent(random_tensor(draw, {3, 3, 2}), 2, 1), Errc::cannot_construct);
  EXPECT_ERRC(oracle::make_inconsistent(random_tensor(draw, {2, 4, 2}), 2, 1), Errc::cannot_construct);
  EXPECT_ERRC(oracle::make_inconsistent(random_tensor(draw, {4, 2, 2}), 0, 1), Errc::invalid_dimension);
}

TEST(MakeInconsistent, DeterministicPerSeed) {
  Draw draw(82);
  const Tensor3 c = random_tensor(draw, {5, 3, 3});
  EXPECT_EQ(oracle::make_inconsistent(c, 2, 9), oracle::make_inconsistent(c, 2, 9));
  EXPECT_NE(oracle::make_inconsistent(c, 2, 9), oracle::make_inconsistent(c, 2, 10));
}

TEST(Kron, Definition) {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  const ComplexMatrix k = oracle::kron(a, ComplexMatrix::Identity(2, 2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.block(0, 0, 2, 2) = ComplexMatrix::Identity(2, 2);
  expected.block(0, 2, 2, 2) = 2.0 * ComplexMatrix::Identity(2, 2);
  expected.block(2, 0, 2, 2) = 3.0 * ComplexMatrix::Identity(2, 2);
  expected.block(2, 2, 2, 2) = 4.0 * ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(k, expected);
}
