#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"

using namespace tensoreq;
using tensoreq::check::Draw;
using tensoreq::check::random_tensor;

namespace {

Tensor3 iota(Dims dims) {
  std::vector<double> v(dims.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i + 1);
  return Tensor3(dims, std::move(v));
}

}  // namespace

TEST(Tensor3, ConstructorValidates) {
  EXPECT_ERRC(Tensor3({0, 2, 2}, {}), Errc::invalid_dimension);
  EXPECT_ERRC(Tensor3({2, 2, 2}, std::vector<double>(7)), Errc::invalid_dimension);
  std::vector<double> bad(8, 1.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_ERRC(Tensor3({2, 2, 2}, bad), Errc::non_finite);
  bad[3] = std::numeric_limits<double>::infinity();
  EXPECT_ERRC(Tensor3({2, 2, 2}, bad), Errc::non_finite);
}

TEST(Tensor3, LayoutIsSliceMajorRowMajor) {
  const Tensor3 t = iota({2, 3, 2});
  EXPECT_EQ(t(0, 0, 0), 1.0);
  EXPECT_EQ(t(0, 1, 0), 2.0);
  EXPECT_EQ(t(1, 0, 0), 4.0);
  EXPECT_EQ(t(0, 0, 1), 7.0);
  EXPECT_EQ(t.slice(1)(1, 2), 12.0);
  EXPECT_EQ(t.at(1, 2, 1), 12.0);
  EXPECT_ERRC(t.at(2, 0, 0), Errc::out_of_bounds);
  EXPECT_ERRC(t.slice(2), Errc::out_of_bounds);
}

TEST(Tensor3, Zeros) {
  EXPECT_EQ(fro_norm(zeros(2, 2, 2)), 0.0);
  const Tensor3 z = zeros(1, 1, 1);
  EXPECT_EQ(z.size(), 1u);
  EXPECT_EQ(z(0, 0, 0), 0.0);
  EXPECT_EQ(fro_norm(zeros(5, 4, 3)), 0.0);
  EXPECT_ERRC(zeros(0, 1, 1), Errc::invalid_dimension);
  EXPECT_EQ(Tensor3(), zeros(1, 1, 1));
}

TEST(Tensor3, UnitTensor) {
  const Dims d{2, 2, 2};
  EXPECT_EQ(fro_norm(unit_tensor({0, 0}, 0, d)), 1.0);
  EXPECT_EQ(inner(unit_tensor({0, 1}, 0, d), unit_tensor({1, 0}, 1, d)), 0.0);
  Tensor3 sum = zeros(2, 2, 2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) sum = sum + unit_tensor({i, j}, k, d);
  EXPECT_EQ(sum, ones(2, 2, 2));
  EXPECT_ERRC(unit_tensor({2, 0}, 0, d), Errc::out_of_bounds);
  EXPECT_ERRC(unit_tensor({0, 0}, 2, d), Errc::out_of_bounds);

  const Tensor3 c = iota({3, 2, 4});
  EXPECT_EQ(inner(unit_tensor({2, 1}, 3, c.dims()), c), c(2, 1, 3));
}

TEST(Tensor3, UnfoldFold) {
  const Tensor3 c = iota({3, 2, 4});
  const Matrix m = unfold(c);
  ASSERT_EQ(m.rows(), 12);
  ASSERT_EQ(m.cols(), 2);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(m.block(3 * k, 0, 3, 2), Matrix(c.slice(k)));
  EXPECT_EQ(fold(m, 4), c);

  const Tensor3 single = iota({3, 2, 1});
  EXPECT_EQ(unfold(single), Matrix(single.slice(0)));
  EXPECT_EQ(unfold(zeros(2, 2, 2)), Matrix::Zero(4, 2));
  EXPECT_EQ(fold(Matrix::Zero(4, 2), 2), zeros(2, 2, 2));
  EXPECT_EQ(fold(m, 1).n3(), 1u);
  EXPECT_EQ(Matrix(fold(m, 1).slice(0)), m);
  EXPECT_ERRC(fold(Matrix::Zero(5, 2), 2), Errc::invalid_dimension);
}

TEST(Tensor3, FoldUnfoldRoundTripGrid) {
  Draw draw(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Dims d{draw.index(1, 8), draw.index(1, 8), draw.index(1, 8)};
    const Tensor3 c = random_tensor(draw, d);
    EXPECT_EQ(fold(unfold(c), d.n3), c) << d.str();
  }
}

TEST(Tensor3, BcircLayout) {
  const Tensor3 c = iota({2, 3, 3});
  const Matrix b = bcirc(c);
  ASSERT_EQ(b.rows(), 6);
  ASSERT_EQ(b.cols(), 9);
  // First block column C0, C1, C2; first block row C0, C2, C1.
  EXPECT_EQ(Matrix(b.block(2, 0, 2, 3)), Matrix(c.slice(1)));
  EXPECT_EQ(Matrix(b.block(0, 3, 2, 3)), Matrix(c.slice(2)));
  EXPECT_EQ(Matrix(b.block(0, 6, 2, 3)), Matrix(c.slice(1)));

  EXPECT_EQ(bcirc(iota({3, 2, 1})), Matrix(iota({3, 2, 1}).slice(0)));
  EXPECT_EQ(bcirc(identity(3, 4)), Matrix::Identity(12, 12));
}

TEST(Tensor3, BcircColumnBlocksAreCyclicShifts) {
  Draw draw(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Dims d{draw.index(1, 5), draw.index(1, 5), draw.index(1, 6)};
    const Tensor3 c = random_tensor(draw, d);
    const Matrix b = bcirc(c);
    const auto r = static_cast<Eigen::Index>(d.n1);
    const auto s = static_cast<Eigen::Index>(d.n2);
    const auto n3 = static_cast<Eigen::Index>(d.n3);
    for (Eigen::Index j = 0; j < n3; ++j) {
      for (Eigen::Index i = 0; i < n3; ++i) {
        const Eigen::Index src = ((i - j) % n3 + n3) % n3;
        EXPECT_EQ(Matrix(b.block(i * r, j * s, r, s)), Matrix(b.block(src * r, 0, r, s)));
      }
    }
  }
}

TEST(Tensor3, Transpose) {
  const Tensor3 c = iota({2, 3, 4});
  const Tensor3 t = transpose(c);
  EXPECT_EQ(t.dims(), (Dims{3, 2, 4}));
  EXPECT_EQ(Matrix(t.slice(0)), Matrix(c.slice(0).transpose()));
  for (std::size_t k = 1; k < 4; ++k) EXPECT_EQ(Matrix(t.slice(k)), Matrix(c.slice(4 - k).transpose()));
  EXPECT_EQ(transpose(t), c);

  const Tensor3 m = iota({2, 3, 1});
  EXPECT_EQ(Matrix(transpose(m).slice(0)), Matrix(m.slice(0).transpose()));
  EXPECT_EQ(fro_norm(t), fro_norm(c));
}

TEST(Tensor3, TransposeInvolutionGrid) {
  Draw draw(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor3 c = random_tensor(draw, {draw.index(1, 8), draw.index(1, 8), draw.index(1, 8)});
    EXPECT_EQ(transpose(transpose(c)), c);
  }
}

TEST(Tensor3, Trace) {
  EXPECT_EQ(trace(identity(4, 3)), 4.0);
  EXPECT_EQ(trace(identity(5, 3)), 5.0);
  EXPECT_EQ(trace(iota({2, 2, 2})), 1.0 + 4.0 + 5.0 + 8.0);
  EXPECT_ERRC(trace(iota({2, 3, 1})), Errc::non_square);

  Draw draw(14);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = draw.index(1, 7);
    const Tensor3 c = random_tensor(draw, {n, n, draw.index(1, 6)});
    const Tensor3 d = random_tensor(draw, c.dims());
    const double tc = trace(c);
    EXPECT_LE(std::abs(tc - trace(transpose(c))), 1e-14 * (1 + std::abs(tc)));
    const double a = draw.real(-3, 3);
    const double b = draw.real(-3, 3);
    const double lhs = trace(a * c + b * d);
    const double rhs = a * tc + b * trace(d);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (1 + std::abs(a * tc) + std::abs(b * trace(d))));
  }
}

TEST(Tensor3, FirstSliceTrace) {
  EXPECT_EQ(first_slice_trace(identity(3, 4)), 3.0);
  EXPECT_EQ(first_slice_trace(zeros(3, 3, 2)), 0.0);
  EXPECT_EQ(first_slice_trace(iota({2, 2, 2})), 5.0);
  EXPECT_ERRC(first_slice_trace(iota({3, 2, 2})), Errc::non_square);
}

TEST(Tensor3, InnerAndNorm) {
  const Tensor3 c = iota({2, 3, 2});
  EXPECT_DOUBLE_EQ(inner(c, c), fro_norm(c) * fro_norm(c));
  EXPECT_EQ(fro_norm(identity(4, 3)), 2.0);
  EXPECT_ERRC(inner(c, zeros(3, 2, 2)), Errc::dimension_mismatch);
}

TEST(Tensor3, Arithmetic) {
  Draw draw(15);
  const Tensor3 x = random_tensor(draw, {3, 4, 2});
  const Tensor3 y = random_tensor(draw, {3, 4, 2});
  EXPECT_EQ(axpy(0.0, x, y), y);
  EXPECT_EQ(axpy(1.0, x, zeros(3, 4, 2)), x);
  EXPECT_EQ(axpy(-1.0, x, x), zeros(3, 4, 2));
  EXPECT_EQ(add(x, y), x + y);
  EXPECT_EQ(sub(x, y), x - y);
  EXPECT_EQ(scale(2.0, x), x + x);
  EXPECT_EQ(2.0 * x, scale(2.0, x));
  EXPECT_ERRC(axpy(1.0, x, zeros(3, 4, 1)), Errc::dimension_mismatch);
  EXPECT_ERRC(x + zeros(4, 3, 2), Errc::dimension_mismatch);
  EXPECT_EQ(max_abs_diff(x, x), 0.0);
}

TEST(Tensor3, FromSlices) {
  const Tensor3 c = iota({2, 3, 3});
  std::vector<Matrix> slices;
  for (std::size_t k = 0; k < 3; ++k) slices.emplace_back(c.slice(k));
  EXPECT_EQ(from_slices(slices), c);
  EXPECT_ERRC(from_slices({}), Errc::invalid_dimension);
  slices.back() = Matrix::Zero(3, 2);
  EXPECT_ERRC(from_slices(slices), Errc::dimension_mismatch);
}

TEST(Tensor3, IdentityValidates) {
  const Tensor3 i = identity(3, 2);
  EXPECT_EQ(Matrix(i.slice(0)), Matrix::Identity(3, 3));
  EXPECT_EQ(Matrix(i.slice(1)), Matrix::Zero(3, 3));
  EXPECT_ERRC(identity(0, 2), Errc::invalid_dimension);
  EXPECT_ERRC(identity(2, 0), Errc::invalid_dimension);
}
