#include "tensoreq/tensor3.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "tensoreq/error.hpp"

namespace tensoreq {
namespace {

void require_positive(std::size_t n1, std::size_t n2, std::size_t n3) {
  if (n1 < 1 || n2 < 1 || n3 < 1) {
    raise(Errc::invalid_dimension, fmt::format("dimensions must be >= 1, got ({},{},{})", n1, n2, n3));
  }
}

void require_same_dims(const Tensor3& x, const Tensor3& y, const char* op) {
  if (x.dims() != y.dims()) {
    raise(Errc::dimension_mismatch,
          fmt::format("{}: {} vs {}", op, x.dims().str(), y.dims().str()));
  }
}

void require_square(const Tensor3& c, const char* op) {
  if (c.n1() != c.n2()) {
    raise(Errc::non_square, fmt::format("{}: frontal slices are {}x{}", op, c.n1(), c.n2()));
  }
}

template <typename F>
Tensor3 elementwise(const Tensor3& x, const Tensor3& y, const char* op, F f) {
  require_same_dims(x, y, op);
  std::vector<double> out(x.size());
  const auto a = x.data();
  const auto b = y.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(a[i], b[i]);
  return Tensor3(x.dims(), std::move(out));
}

}  // namespace

std::string Dims::str() const { return fmt::format("({},{},{})", n1, n2, n3); }

Tensor3::Tensor3() : dims_{1, 1, 1}, data_(1, 0.0) {}

Tensor3::Tensor3(Dims dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
  require_positive(dims_.n1, dims_.n2, dims_.n3);
  if (data_.size() != dims_.size()) {
    raise(Errc::invalid_dimension,
          fmt::format("data length {} does not match dims {}", data_.size(), dims_.str()));
  }
  const auto bad = std::find_if(data_.begin(), data_.end(), [](double v) { return !std::isfinite(v); });
  if (bad != data_.end()) {
    raise(Errc::non_finite, fmt::format("entry {} is {}", bad - data_.begin(), *bad));
  }
}

double Tensor3::at(std::size_t i1, std::size_t i2, std::size_t i3) const {
  if (i1 >= dims_.n1 || i2 >= dims_.n2 || i3 >= dims_.n3) {
    raise(Errc::out_of_bounds, fmt::format("index ({},{},{}) outside {}", i1, i2, i3, dims_.str()));
  }
  return (*this)(i1, i2, i3);
}

Eigen::Map<const Matrix> Tensor3::slice(std::size_t k) const {
  if (k >= dims_.n3) {
    raise(Errc::out_of_bounds, fmt::format("slice {} outside {}", k, dims_.str()));
  }
  return {data_.data() + k * dims_.slice_size(), static_cast<Eigen::Index>(dims_.n1),
          static_cast<Eigen::Index>(dims_.n2)};
}

Tensor3 zeros(std::size_t n1, std::size_t n2, std::size_t n3) {
  require_positive(n1, n2, n3);
  return Tensor3({n1, n2, n3}, std::vector<double>(n1 * n2 * n3, 0.0));
}

Tensor3 ones(std::size_t n1, std::size_t n2, std::size_t n3) {
  require_positive(n1, n2, n3);
  return Tensor3({n1, n2, n3}, std::vector<double>(n1 * n2 * n3, 1.0));
}

Tensor3 identity(std::size_t n, std::size_t n3) {
  require_positive(n, n, n3);
  std::vector<double> data(n * n * n3, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return Tensor3({n, n, n3}, std::move(data));
}

Tensor3 unit_tensor(TubeIndex tube, std::size_t i3, Dims dims) {
  require_positive(dims.n1, dims.n2, dims.n3);
  if (tube.i1 >= dims.n1 || tube.i2 >= dims.n2 || i3 >= dims.n3) {
    raise(Errc::out_of_bounds,
          fmt::format("unit index ({},{},{}) outside {}", tube.i1, tube.i2, i3, dims.str()));
  }
  std::vector<double> data(dims.size(), 0.0);
  data[i3 * dims.slice_size() + tube.i1 * dims.n2 + tube.i2] = 1.0;
  return Tensor3(dims, std::move(data));
}

Tensor3 from_slices(const std::vector<Matrix>& slices) {
  if (slices.empty()) raise(Errc::invalid_dimension, "from_slices: no slices");
  const auto rows = static_cast<std::size_t>(slices.front().rows());
  const auto cols = static_cast<std::size_t>(slices.front().cols());
  Dims dims{rows, cols, slices.size()};
  std::vector<double> data;
  data.reserve(dims.size());
  for (const auto& s : slices) {
    if (static_cast<std::size_t>(s.rows()) != rows || static_cast<std::size_t>(s.cols()) != cols) {
      raise(Errc::dimension_mismatch, "from_slices: slices differ in shape");
    }
    data.insert(data.end(), s.data(), s.data() + s.size());
  }
  return Tensor3(dims, std::move(data));
}

Matrix unfold(const Tensor3& c) {
  // Slice-major storage with row-major slices is already the row-major
  // layout of the unfolded matrix.
  return Eigen::Map<const Matrix>(c.data().data(), static_cast<Eigen::Index>(c.n1() * c.n3()),
                                  static_cast<Eigen::Index>(c.n2()));
}

Tensor3 fold(const Matrix& m, std::size_t n3) {
  if (n3 < 1 || m.rows() == 0 || m.cols() == 0 || static_cast<std::size_t>(m.rows()) % n3 != 0) {
    raise(Errc::invalid_dimension, fmt::format("fold: {} rows not divisible by n3 = {}", m.rows(), n3));
  }
  const std::size_t n1 = static_cast<std::size_t>(m.rows()) / n3;
  return Tensor3({n1, static_cast<std::size_t>(m.cols()), n3},
                 std::vector<double>(m.data(), m.data() + m.size()));
}

Matrix bcirc(const Tensor3& c) {
  const auto n1 = static_cast<Eigen::Index>(c.n1());
  const auto n2 = static_cast<Eigen::Index>(c.n2());
  const std::size_t n3 = c.n3();
  Matrix out(n1 * static_cast<Eigen::Index>(n3), n2 * static_cast<Eigen::Index>(n3));
  for (std::size_t r = 0; r < n3; ++r) {
    for (std::size_t s = 0; s < n3; ++s) {
      out.block(static_cast<Eigen::Index>(r) * n1, static_cast<Eigen::Index>(s) * n2, n1, n2) =
          c.slice((r + n3 - s) % n3);
    }
  }
  return out;
}

Tensor3 transpose(const Tensor3& c) {
  const std::size_t n1 = c.n1(), n2 = c.n2(), n3 = c.n3();
  std::vector<double> out(c.size());
  for (std::size_t k = 0; k < n3; ++k) {
    const std::size_t src = (n3 - k) % n3;
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) out[k * n1 * n2 + j * n1 + i] = c(i, j, src);
    }
  }
  return Tensor3({n2, n1, n3}, std::move(out));
}

double trace(const Tensor3& c) {
  require_square(c, "trace");
  double sum = 0.0;
  for (std::size_t k = 0; k < c.n3(); ++k) {
    for (std::size_t i = 0; i < c.n1(); ++i) sum += c(i, i, k);
  }
  return sum;
}

double first_slice_trace(const Tensor3& c) {
  require_square(c, "first_slice_trace");
  double sum = 0.0;
  for (std::size_t i = 0; i < c.n1(); ++i) sum += c(i, i, 0);
  return sum;
}

double inner(const Tensor3& c, const Tensor3& d) {
  require_same_dims(c, d, "inner");
  const auto a = c.data();
  const auto b = d.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double fro_norm(const Tensor3& c) {
  double sum = 0.0;
  for (double v : c.data()) sum += v * v;
  return std::sqrt(sum);
}

double max_abs_diff(const Tensor3& c, const Tensor3& d) {
  require_same_dims(c, d, "max_abs_diff");
  const auto a = c.data();
  const auto b = d.data();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Tensor3 axpy(double alpha, const Tensor3& x, const Tensor3& y) {
  return elementwise(x, y, "axpy", [alpha](double a, double b) { return alpha * a + b; });
}

Tensor3 scale(double alpha, const Tensor3& x) {
  std::vector<double> out(x.data().begin(), x.data().end());
  for (double& v : out) v *= alpha;
  return Tensor3(x.dims(), std::move(out));
}

Tensor3 add(const Tensor3& x, const Tensor3& y) {
  return elementwise(x, y, "add", [](double a, double b) { return a + b; });
}

Tensor3 sub(const Tensor3& x, const Tensor3& y) {
  return elementwise(x, y, "sub", [](double a, double b) { return a - b; });
}

}  // namespace tensoreq
