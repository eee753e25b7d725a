#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "tensoreq/tensor3.hpp"

namespace tensoreq {

/// Seeded standard normal variates: mt19937_64 feeding a Box-Muller
/// transform. Both stages are fully specified, so a seed reproduces the
/// same stream on every conforming platform.
class NormalGenerator {
 public:
  explicit NormalGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1] with 53 random bits.
  double uniform();
  double operator()();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// I.i.d. N(0, 1) entries, filled in storage order.
Tensor3 gaussian_tensor(Dims dims, std::uint64_t seed);

}  // namespace tensoreq
