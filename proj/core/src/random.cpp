#include "tensoreq/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace tensoreq {

double NormalGenerator::uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double NormalGenerator::operator()() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Tensor3 gaussian_tensor(Dims dims, std::uint64_t seed) {
  NormalGenerator gen(seed);
  std::vector<double> data(dims.size());
  for (double& v : data) v = gen();
  return Tensor3(dims, std::move(data));
}

}  // namespace tensoreq
