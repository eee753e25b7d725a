#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include <tensoreq/tensoreq.hpp>

namespace tensoreq::check {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(TENSOREQ_FIXTURE_DIR) / name;
}

inline Tensor3 load_fixture(const std::string& name) { return load_tensor(fixture_path(name)); }

// Seeded draws for randomized grids. Plain modulo keeps the sequence
// identical across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t lo, std::size_t hi) { return lo + engine_() % (hi - lo + 1); }
  std::uint64_t seed() { return engine_(); }
  double real(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

inline Tensor3 random_tensor(Draw& draw, Dims dims) { return gaussian_tensor(dims, draw.seed()); }

// Creates a fresh directory under the system temp dir and removes it again.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("tensoreq_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Max-norm distance between two complex matrices of equal shape.
inline double complex_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace tensoreq::check

// Asserts that `expr` throws tensoreq::Error carrying `errc`.
#define EXPECT_ERRC(expr, errc)                                                 \
  do {                                                                          \
    try {                                                                       \
      (void)(expr);                                                             \
      ADD_FAILURE() << #expr " did not throw";                                  \
    } catch (const ::tensoreq::Error& e_) {                                     \
      EXPECT_EQ(e_.code(), (errc)) << e_.what();                                \
    }                                                                           \
  } while (false)

namespace tensoreq::check {

inline SolverConfig config(double tol, bool relative = false) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.relative_tol = relative;
  return cfg;
}

// Iterates seen through SolverConfig::observer.
struct Trajectory {
  std::vector<Tensor3> r, p, q;

  SolverConfig attach(SolverConfig cfg) {
    cfg.observer = [this](const IterationState& s) {
      r.push_back(s.r);
      p.push_back(s.p);
      if (s.q) q.push_back(*s.q);
    };
    return cfg;
  }
};

// Largest normalized pairwise inner products over the iterates that precede
// the final (converged) one. The final residual sits at the rounding floor
// and has no meaningful direction.
struct OrthogonalityDefect {
  double residual = 0.0;   // |<R_i, R_j>| / (|R_i| |R_j|)
  double direction = 0.0;  // SPD: |<C*P_i, P_j>| / (|C| |P_i| |P_j|); otherwise |<Q_i, Q_j>| / (|Q_i| |Q_j|)
};

inline OrthogonalityDefect orthogonality_defect(const Trajectory& t, const Tensor3* spd_c) {
  OrthogonalityDefect out;
  const std::size_t n = t.r.empty() ? 0 : t.r.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      out.residual = std::max(out.residual, std::abs(inner(t.r[i], t.r[j])) / (fro_norm(t.r[i]) * fro_norm(t.r[j])));
      double dir = 0.0;
      if (spd_c) {
        dir = std::abs(inner(tprod(*spd_c, t.p[i]), t.p[j])) /
              (fro_norm(*spd_c) * fro_norm(t.p[i]) * fro_norm(t.p[j]));
      } else {
        dir = std::abs(inner(t.q[i], t.q[j])) / (fro_norm(t.q[i]) * fro_norm(t.q[j]));
      }
      out.direction = std::max(out.direction, dir);
    }
  }
  return out;
}

}  // namespace tensoreq::check
