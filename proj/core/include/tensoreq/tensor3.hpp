#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tensoreq {

// Real dense matrix; row-major so that a run of stacked frontal slices is
// itself a valid matrix view.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Dims {
  std::size_t n1 = 1;
  std::size_t n2 = 1;
  std::size_t n3 = 1;

  std::size_t size() const noexcept { return n1 * n2 * n3; }
  std::size_t slice_size() const noexcept { return n1 * n2; }
  std::string str() const;

  friend bool operator==(const Dims&, const Dims&) = default;
};

// Position of a tube C(i1, i2, :). 0-based.
struct TubeIndex {
  std::size_t i1 = 0;
  std::size_t i2 = 0;
};

/// Dense real third-order tensor of shape n1 x n2 x n3.
///
/// Storage is slice-major: frontal slice 0 first, then slice 1, and so on.
/// Each frontal slice is stored row-major, so entry (i1, i2, i3) lives at
/// `i3*n1*n2 + i1*n2 + i2`. This is also the on-disk payload order.
///
/// Values are immutable once constructed. The constructor rejects
/// non-positive dimensions, size mismatches and non-finite entries.
class Tensor3 {
 public:
  /// 1x1x1 zero tensor.
  Tensor3();
  Tensor3(Dims dims, std::vector<double> data);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t n1() const noexcept { return dims_.n1; }
  std::size_t n2() const noexcept { return dims_.n2; }
  std::size_t n3() const noexcept { return dims_.n3; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return data_[i3 * dims_.slice_size() + i1 * dims_.n2 + i2];
  }
  double at(std::size_t i1, std::size_t i2, std::size_t i3) const;

  std::span<const double> data() const noexcept { return data_; }

  /// Frontal slice k (0-based) as an n1 x n2 matrix view.
  Eigen::Map<const Matrix> slice(std::size_t k) const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims dims_;
  std::vector<double> data_;
};

// Construction

Tensor3 zeros(std::size_t n1, std::size_t n2, std::size_t n3);
Tensor3 ones(std::size_t n1, std::size_t n2, std::size_t n3);

/// Identity matrix in frontal slice 0, zeros elsewhere.
Tensor3 identity(std::size_t n, std::size_t n3);

/// Single 1 at (tube.i1, tube.i2, i3), zeros elsewhere.
Tensor3 unit_tensor(TubeIndex tube, std::size_t i3, Dims dims);

/// Builds a tensor from equally shaped frontal slices.
Tensor3 from_slices(const std::vector<Matrix>& slices);

// Structural operators

/// (n1*n3) x n2 matrix stacking frontal slices vertically in order.
Matrix unfold(const Tensor3& c);

/// Inverse of unfold. `m.rows()` must be divisible by n3.
Tensor3 fold(const Matrix& m, std::size_t n3);

/// Block circulant matrix of size (n1*n3) x (n2*n3). Block (r, s) is
/// frontal slice (r - s) mod n3.
Matrix bcirc(const Tensor3& c);

/// T-transpose: slice 0 transposed, slices 1..n3-1 transposed in reverse order.
Tensor3 transpose(const Tensor3& c);

/// Sum of the diagonals of every frontal slice. Requires n1 == n2.
double trace(const Tensor3& c);

/// Trace of frontal slice 0 only. Requires n1 == n2.
double first_slice_trace(const Tensor3& c);

double inner(const Tensor3& c, const Tensor3& d);
double fro_norm(const Tensor3& c);

/// Largest absolute entrywise difference.
double max_abs_diff(const Tensor3& c, const Tensor3& d);

// Elementwise arithmetic. Operands must have identical dims.

Tensor3 axpy(double alpha, const Tensor3& x, const Tensor3& y);
Tensor3 scale(double alpha, const Tensor3& x);
Tensor3 add(const Tensor3& x, const Tensor3& y);
Tensor3 sub(const Tensor3& x, const Tensor3& y);

inline Tensor3 operator+(const Tensor3& x, const Tensor3& y) { return add(x, y); }
inline Tensor3 operator-(const Tensor3& x, const Tensor3& y) { return sub(x, y); }
inline Tensor3 operator*(double alpha, const Tensor3& x) { return scale(alpha, x); }

}  // namespace tensoreq
