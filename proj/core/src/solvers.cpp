#include "tensoreq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <utility>

#include <fmt/format.h>

#include "tensoreq/error.hpp"
#include "tensoreq/spectral.hpp"
#include "tensoreq/tproduct.hpp"

namespace tensoreq {
namespace {

constexpr double kBreakdownTol = 1e-14;

// Convention for the traces in the update formulas: Tr((A^T * B)^(1)) is the
// Euclidean inner product <A, B>, so every trace is evaluated as inner().

struct Setup {
  double threshold;
  std::size_t cap;
};

Setup make_setup(const SolverConfig& cfg, double rhs_norm, std::size_t bound) {
  if (!(cfg.tol > 0.0)) raise(Errc::invalid_dimension, "solver tolerance must be positive");
  if (cfg.max_iters && *cfg.max_iters < 1) raise(Errc::invalid_dimension, "max_iters must be >= 1");
  const double threshold = cfg.relative_tol ? cfg.tol * rhs_norm : cfg.tol;
  std::size_t cap = bound;
  if (cfg.tol < 1e-9) cap *= 2;
  return {threshold, cfg.max_iters.value_or(cap)};
}

// Keeps the full trace when asked, otherwise just the first and latest values.
class History {
 public:
  History(SolverReport& report, bool full) : report_(report), full_(full) {}

  void residual(double value) {
    auto& h = report_.residual_history;
    if (full_ || h.size() < 2) {
      h.push_back(value);
    } else {
      h.back() = value;
    }
  }

  void step(double step, double correction) {
    auto& h = report_.step_history;
    if (full_ || h.size() < 2) {
      h.push_back({step, correction});
    } else {
      h.back() = {step, correction};
    }
  }

 private:
  SolverReport& report_;
  bool full_;
};

Tensor3 initial_guess(const SolverConfig& cfg, const Dims& unknown,
                      const std::function<Tensor3(const Tensor3&)>& range_map) {
  return std::visit(
      [&](const auto& policy) -> Tensor3 {
        using T = std::decay_t<decltype(policy)>;
        if constexpr (std::is_same_v<T, ZeroInit>) {
          return zeros(unknown.n1, unknown.n2, unknown.n3);
        } else if constexpr (std::is_same_v<T, GivenInit>) {
          if (policy.x.dims() != unknown) {
            raise(Errc::dimension_mismatch,
                  fmt::format("initial guess is {}, unknown is {}", policy.x.dims().str(), unknown.str()));
          }
          return policy.x;
        } else {
          Tensor3 x = range_map(policy.h);
          if (x.dims() != unknown) {
            raise(Errc::dimension_mismatch, fmt::format("range initialisation produced {}, unknown is {}",
                                                        x.dims().str(), unknown.str()));
          }
          return x;
        }
      },
      cfg.init);
}

void require_system_dims(const Tensor3& c, const Tensor3& d) {
  if (c.n1() != d.n1() || c.n3() != d.n3()) {
    raise(Errc::dimension_mismatch, fmt::format("coefficient {} and right-hand side {}", c.dims().str(), d.dims().str()));
  }
}

void notify(const SolverConfig& cfg, std::size_t k, const Tensor3& x, const Tensor3& r, const Tensor3& p,
            const Tensor3* q) {
  if (cfg.observer) cfg.observer(IterationState{k, x, r, p, q});
}

// Runs one update. An update that overflows ends the solve as a breakdown.
template <class Update>
bool guard_overflow(SolverReport& rep, Update&& update) {
  try {
    update();
    return true;
  } catch (const Error& e) {
    if (e.code() != Errc::non_finite) throw;
    rep.status = SolverStatus::BreakdownDetected;
    return false;
  }
}

// Shared loop of the consistent and least-squares algorithms, which differ
// only in the operator and right-hand side they are handed:
//   consistent:    op = C,       adjoint = C^T, rhs = D
//   least squares: op = C^T*C,   adjoint = op,  rhs = C^T*D
//
// op_norm > 0 turns on inconsistency detection. In floating point the search
// direction collapses to roughly eps * ||op|| * ||R|| rather than to zero, so
// the test on ||Q|| is scaled by ||op||_F * ||R_k|| on top of the plain
// threshold.
Solution conjugate_residual_loop(const SpectralTensor& op, const SpectralTensor& adjoint, const Tensor3& rhs,
                                 Tensor3 x, const SolverConfig& cfg, const Setup& setup, double op_norm) {
  const bool detect_inconsistent = op_norm > 0.0;
  Solution out{std::move(x), {}};
  SolverReport& rep = out.report;
  rep.rhs_norm = fro_norm(rhs);
  History hist(rep, cfg.record_history);

  Tensor3 r = rhs - tprod(op, out.x);
  Tensor3 p = tprod(adjoint, r);
  Tensor3 q = p;
  std::size_t k = 1;

  while (true) {
    const double rn = fro_norm(r);
    const double qn = fro_norm(q);
    hist.residual(rn);
    rep.iterations = k;
    rep.final_residual = rn;
    rep.final_direction_norm = qn;
    notify(cfg, k, out.x, r, p, &q);

    if (rn < setup.threshold) {
      rep.status = SolverStatus::Converged;
      break;
    }
    if (!std::isfinite(rn) || !std::isfinite(qn)) {
      rep.status = SolverStatus::BreakdownDetected;
      break;
    }
    if (detect_inconsistent && qn < std::max(setup.threshold, cfg.tol * op_norm * rn)) {
      rep.status = SolverStatus::InconsistentDetected;
      break;
    }
    if (!detect_inconsistent && qn <= kBreakdownTol) {
      rep.status = SolverStatus::BreakdownDetected;
      break;
    }
    if (k >= setup.cap) {
      rep.status = SolverStatus::IterationCapReached;
      break;
    }

    const double qn2 = qn * qn;
    const double step = rn * rn / qn2;
    if (!std::isfinite(step)) {
      rep.status = SolverStatus::BreakdownDetected;
      break;
    }
    const bool advanced = guard_overflow(rep, [&] {
      out.x = axpy(step, q, out.x);
      r = rhs - tprod(op, out.x);
      p = tprod(adjoint, r);
      const double correction = inner(p, q) / qn2;
      q = axpy(-correction, q, p);
      hist.step(step, correction);
    });
    if (!advanced) break;
    ++k;
  }
  return out;
}

}  // namespace

std::string_view to_string(SolverStatus status) noexcept {
  switch (status) {
    case SolverStatus::Converged: return "Converged";
    case SolverStatus::IterationCapReached: return "IterationCapReached";
    case SolverStatus::InconsistentDetected: return "InconsistentDetected";
    case SolverStatus::BreakdownDetected: return "BreakdownDetected";
  }
  return "Unknown";
}

std::size_t spd_iteration_bound(std::size_t n, std::size_t l, std::size_t n3) noexcept { return n * l * n3 + 1; }

std::size_t consistent_iteration_bound(std::size_t n1, std::size_t l, std::size_t n3) noexcept {
  return n1 * l * n3 + 1;
}

std::size_t lsq_iteration_bound(std::size_t n2, std::size_t l, std::size_t n3) noexcept { return n2 * l * n3; }

Solution solve_spd(const Tensor3& c, const Tensor3& d, const SolverConfig& cfg) {
  if (c.n1() != c.n2()) {
    raise(Errc::non_square, fmt::format("SPD solver needs square slices, coefficient is {}", c.dims().str()));
  }
  require_system_dims(c, d);
  if (cfg.check_spd && !is_t_spd(c)) raise(Errc::not_spd, "coefficient tensor is not T-symmetric positive definite");

  const SpectralTensor c_hat = dft_mode3(c);
  const Dims unknown{c.n2(), d.n2(), c.n3()};
  const Setup setup = make_setup(cfg, fro_norm(d), spd_iteration_bound(c.n1(), d.n2(), c.n3()));

  Solution out{initial_guess(cfg, unknown, [&](const Tensor3& h) { return tprod(transpose(c), h); }), {}};
  SolverReport& rep = out.report;
  rep.rhs_norm = fro_norm(d);
  History hist(rep, cfg.record_history);

  Tensor3 r = d - tprod(c_hat, out.x);
  Tensor3 p = r;
  std::size_t k = 1;

  while (true) {
    const double rn = fro_norm(r);
    hist.residual(rn);
    rep.iterations = k;
    rep.final_residual = rn;
    rep.final_direction_norm = fro_norm(p);
    notify(cfg, k, out.x, r, p, nullptr);

    if (rn < setup.threshold) {
      rep.status = SolverStatus::Converged;
      break;
    }
    if (k >= setup.cap) {
      rep.status = SolverStatus::IterationCapReached;
      break;
    }

    const Tensor3 cp = tprod(c_hat, p);
    const double curvature = inner(p, cp);
    const double pn = rep.final_direction_norm;
    if (curvature <= kBreakdownTol * pn * pn) {
      rep.status = SolverStatus::BreakdownDetected;
      break;
    }
    const double step = inner(p, r) / curvature;
    const bool advanced = guard_overflow(rep, [&] {
      out.x = axpy(step, p, out.x);
      r = d - tprod(c_hat, out.x);
      // <P, C*R> equals <C*P, R> for T-symmetric C.
      const double correction = inner(cp, r) / curvature;
      p = axpy(-correction, p, r);
      hist.step(step, correction);
    });
    if (!advanced) break;
    ++k;
  }
  return out;
}

Solution solve_consistent(const Tensor3& c, const Tensor3& d, const SolverConfig& cfg) {
  require_system_dims(c, d);
  const Tensor3 ct = transpose(c);
  const Dims unknown{c.n2(), d.n2(), c.n3()};
  const Setup setup = make_setup(cfg, fro_norm(d), consistent_iteration_bound(c.n1(), d.n2(), c.n3()));
  Tensor3 x0 = initial_guess(cfg, unknown, [&](const Tensor3& h) { return tprod(ct, h); });
  return conjugate_residual_loop(dft_mode3(c), dft_mode3(ct), d, std::move(x0), cfg, setup,
                                 std::max(fro_norm(c), std::numeric_limits<double>::min()));
}

Solution solve_lsq(const Tensor3& c, const Tensor3& d, const SolverConfig& cfg) {
  require_system_dims(c, d);
  const Tensor3 ct = transpose(c);
  const Tensor3 gram_raw = tprod(ct, c);
  const Tensor3 gram = 0.5 * (gram_raw + transpose(gram_raw));
  const Tensor3 rhs = tprod(ct, d);
  const Dims unknown{c.n2(), d.n2(), c.n3()};
  const Setup setup = make_setup(cfg, fro_norm(rhs), lsq_iteration_bound(c.n2(), d.n2(), c.n3()));
  const SpectralTensor gram_hat = dft_mode3(gram);
  Tensor3 x0 = initial_guess(cfg, unknown, [&](const Tensor3& h) { return tprod(gram_hat, h); });
  return conjugate_residual_loop(gram_hat, gram_hat, rhs, std::move(x0), cfg, setup, 0.0);
}

double residual(const Tensor3& c, const Tensor3& x, const Tensor3& d) {
  const Tensor3 cx = tprod(c, x);
  if (cx.dims() != d.dims()) {
    raise(Errc::dimension_mismatch, fmt::format("C*X is {}, D is {}", cx.dims().str(), d.dims().str()));
  }
  return fro_norm(cx - d);
}

double relative_error(const Tensor3& c, const Tensor3& x, const Tensor3& d) {
  const double dn = fro_norm(d);
  if (dn == 0.0) raise(Errc::zero_division, "relative error undefined for zero right-hand side");
  return residual(c, x, d) / dn;
}

}  // namespace tensoreq
