#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "tensoreq/tensor3.hpp"

namespace tensoreq {

enum class SolverStatus {
  Converged,
  IterationCapReached,
  InconsistentDetected,
  BreakdownDetected,
};

std::string_view to_string(SolverStatus status) noexcept;

// Initial guess policies.
struct ZeroInit {};
struct GivenInit {
  Tensor3 x;
};
/// Start in the range of the adjoint: X1 = C^T * H for the SPD and consistent
/// solvers, X1 = C^T * C * H for the least-squares solver. Either choice
/// yields the minimal Frobenius-norm solution.
struct RangeInit {
  Tensor3 h;
};
using InitPolicy = std::variant<ZeroInit, GivenInit, RangeInit>;

/// Snapshot handed to SolverConfig::observer once per iteration index k
/// (starting at k = 1), after R_k and the directions are formed and before
/// the stopping test. `q` is null for the SPD solver.
struct IterationState {
  std::size_t k;
  const Tensor3& x;
  const Tensor3& r;
  const Tensor3& p;
  const Tensor3* q;
};

using IterationObserver = std::function<void(const IterationState&)>;

struct SolverConfig {
  /// Stop when ||R_k|| < tol.
  double tol = 1e-10;
  /// Interpret tol relative to the norm of the right-hand side (D, or C^T*D
  /// for least squares) instead of as an absolute threshold.
  bool relative_tol = false;
  /// Cap on the iteration index k. Defaults to the finite-termination bound
  /// of the algorithm, doubled when the threshold is below 1e-9.
  std::optional<std::size_t> max_iters;
  /// Keep every ||R_k|| and step scalar; otherwise only the first and last.
  bool record_history = false;
  InitPolicy init = ZeroInit{};
  /// solve_spd only: verify the coefficient is T-SPD before iterating.
  bool check_spd = true;
  IterationObserver observer;
};

/// Scalars used to move from iteration k-1 to k. `step` multiplies the
/// search direction in the X update; `correction` is the coefficient of the
/// previous direction removed when forming the new one.
struct StepTrace {
  double step = 0.0;
  double correction = 0.0;
};

struct SolverReport {
  SolverStatus status = SolverStatus::Converged;
  /// Final iteration index k. A start that already satisfies the stopping
  /// test reports 1; each update adds one.
  std::size_t iterations = 0;
  std::vector<double> residual_history;
  std::vector<StepTrace> step_history;
  /// ||R_k|| at exit, in the algorithm's own residual (normal-equation
  /// residual for least squares).
  double final_residual = 0.0;
  /// ||Q_k|| (||P_k|| for the SPD solver) at exit.
  double final_direction_norm = 0.0;
  /// Norm of the right-hand side the residual is measured against.
  double rhs_norm = 0.0;

  std::size_t updates() const noexcept { return iterations == 0 ? 0 : iterations - 1; }
};

struct Solution {
  Tensor3 x;
  SolverReport report;
};

/// Iteration index bounds from the finite-termination results.
std::size_t spd_iteration_bound(std::size_t n, std::size_t l, std::size_t n3) noexcept;
std::size_t consistent_iteration_bound(std::size_t n1, std::size_t l, std::size_t n3) noexcept;
std::size_t lsq_iteration_bound(std::size_t n2, std::size_t l, std::size_t n3) noexcept;

/// Conjugate directions for C * X = D with T-SPD C (n,n,n3), D (n,l,n3).
Solution solve_spd(const Tensor3& c, const Tensor3& d, const SolverConfig& cfg = {});

/// C * X = D for any C (n1,n2,n3) and D (n1,l,n3). Stops with
/// InconsistentDetected when ||R_k|| >= tol but ||Q_k|| falls below
/// max(tol, tol * ||C||_F * ||R_k||); the last X_k is returned in that case.
/// Overflowing iterates end with BreakdownDetected.
Solution solve_consistent(const Tensor3& c, const Tensor3& d, const SolverConfig& cfg = {});

/// min ||C * X - D|| through the normal equations C^T*C*X = C^T*D.
Solution solve_lsq(const Tensor3& c, const Tensor3& d, const SolverConfig& cfg = {});

/// ||C * X - D||_F
double residual(const Tensor3& c, const Tensor3& x, const Tensor3& d);

/// ||C * X - D||_F / ||D||_F. Throws zero_division when D is zero.
double relative_error(const Tensor3& c, const Tensor3& x, const Tensor3& d);

}  // namespace tensoreq
