#include "tensoreq_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tensoreq/tensoreq.hpp"

namespace tensoreq::cli {
namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::invalid_dimension:
    case Errc::out_of_bounds:
    case Errc::dimension_mismatch:
    case Errc::non_square:
    case Errc::not_spd:
    case Errc::cannot_construct:
      return kUsage;
    default:
      return kIoFailure;
  }
}

int exit_code_for(SolverStatus status) {
  switch (status) {
    case SolverStatus::Converged: return kOk;
    case SolverStatus::InconsistentDetected: return kInconsistent;
    case SolverStatus::IterationCapReached: return kIterationCap;
    case SolverStatus::BreakdownDetected: return kBreakdown;
  }
  return kIoFailure;
}

struct SolveOptions {
  double tol = 1e-10;
  std::string tol_mode;
  std::optional<std::size_t> max_iters;
  std::string history;
};

void add_solve_options(CLI::App* cmd, SolveOptions& o, const std::string& default_mode) {
  o.tol_mode = default_mode;
  cmd->add_option("--tol", o.tol, "Stopping threshold on the residual norm")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-mode", o.tol_mode, "absolute, or relative to the right-hand side norm")
      ->check(CLI::IsMember({"absolute", "relative"}))
      ->capture_default_str();
  cmd->add_option("--max-iters", o.max_iters, "Iteration cap (default: finite-termination bound)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--history", o.history, "Write the residual history CSV here");
}

SolverConfig make_config(const SolveOptions& o) {
  SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.relative_tol = o.tol_mode == "relative";
  cfg.max_iters = o.max_iters;
  cfg.record_history = !o.history.empty();
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_report(std::ostream& out, const Tensor3& c, const Solution& sol, const Tensor3& d, double elapsed) {
  const SolverReport& rep = sol.report;
  fmt::print(out, "status: {}\n", to_string(rep.status));
  fmt::print(out, "iterations: {}\n", rep.iterations);
  fmt::print(out, "residual: {}\n", num(rep.final_residual));
  const double dn = fro_norm(d);
  fmt::print(out, "relative_error: {}\n", dn > 0.0 ? num(residual(c, sol.x, d) / dn) : "undefined");
  fmt::print(out, "elapsed_seconds: {}\n", num(elapsed));
}

void finish_solve(std::ostream& err, const SolveOptions& o, const SolverReport& rep) {
  if (!o.history.empty()) write_history_csv(o.history, rep.residual_history, rep.rhs_norm);
  if (rep.status != SolverStatus::Converged) fmt::print(err, "solver stopped: {}\n", to_string(rep.status));
}

struct TprodArgs {
  std::string a, b, out;
  bool verify = false;
};

int cmd_tprod(const TprodArgs& a, std::ostream& out) {
  const Tensor3 lhs = load_any(a.a);
  const Tensor3 rhs = load_any(a.b);
  if (lhs.n2() != rhs.n1() || lhs.n3() != rhs.n3()) {
    raise(Errc::dimension_mismatch,
          fmt::format("cannot multiply {} by {}", lhs.dims().str(), rhs.dims().str()));
  }
  const Tensor3 prod = tprod(lhs, rhs);
  save_any(a.out, prod);
  fmt::print(out, "dims: {}\n", prod.dims().str());
  if (a.verify) fmt::print(out, "max_deviation: {}\n", num(max_abs_diff(prod, tprod_naive(lhs, rhs))));
  return kOk;
}

struct SolveArgs {
  std::string c, d, out, mode = "consistent";
  SolveOptions opts;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Tensor3 c = load_any(a.c);
  const Tensor3 d = load_any(a.d);
  const SolverConfig cfg = make_config(a.opts);
  const auto start = std::chrono::steady_clock::now();
  Solution sol = a.mode == "spd"          ? solve_spd(c, d, cfg)
                 : a.mode == "consistent" ? solve_consistent(c, d, cfg)
                                          : solve_lsq(c, d, cfg);
  const double elapsed = seconds_since(start);
  print_report(out, c, sol, d, elapsed);
  if (!a.out.empty()) save_any(a.out, sol.x);
  finish_solve(err, a.opts, sol.report);
  return exit_code_for(sol.report.status);
}

struct DegradeArgs {
  std::string c, image, out;
};

int cmd_degrade(const DegradeArgs& a, std::ostream& out) {
  const Tensor3 blurred = degrade(load_any(a.c), load_any(a.image));
  save_any(a.out, blurred);
  fmt::print(out, "dims: {}\n", blurred.dims().str());
  return kOk;
}

struct RecoverArgs {
  std::string c, degraded, out, reference;
  SolveOptions opts;
};

int cmd_recover(const RecoverArgs& a, std::ostream& out, std::ostream& err) {
  const Tensor3 c = load_any(a.c);
  const Tensor3 degraded = load_any(a.degraded);
  const auto start = std::chrono::steady_clock::now();
  Solution sol = solve_lsq(c, degraded, make_config(a.opts));
  const double elapsed = seconds_since(start);
  print_report(out, c, sol, degraded, elapsed);
  save_any(a.out, sol.x);
  if (!a.reference.empty()) fmt::print(out, "psnr: {}\n", psnr(sol.x, load_any(a.reference)).str());
  finish_solve(err, a.opts, sol.report);
  return exit_code_for(sol.report.status);
}

int cmd_psnr(const std::string& x, const std::string& y, std::ostream& out) {
  const Tensor3 a = load_any(x);
  const Tensor3 b = load_any(y);
  fmt::print(out, "mse: {}\n", num(mse(a, b)));
  fmt::print(out, "psnr: {}\n", psnr(a, b).str());
  return kOk;
}

int cmd_info(const std::string& path, std::ostream& out) {
  const Tensor3 t = load_any(path);
  const auto data = t.data();
  const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
  fmt::print(out, "dims: {}\n", t.dims().str());
  fmt::print(out, "fro_norm: {}\n", num(fro_norm(t)));
  fmt::print(out, "min: {}\n", num(*lo));
  fmt::print(out, "max: {}\n", num(*hi));
  if (t.n1() == t.n2()) {
    fmt::print(out, "t_symmetric: {}\n", is_t_symmetric(t));
    fmt::print(out, "t_spd: {}\n", is_t_spd(t));
  }
  return kOk;
}

struct GenArgs {
  std::string kind, out;
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const Dims dims{a.n1, a.n2, a.n3};
  Tensor3 t;
  if (a.kind == "gaussian") {
    t = gaussian_tensor(dims, a.seed);
  } else if (a.kind == "spd") {
    if (a.n1 != a.n2) raise(Errc::non_square, fmt::format("spd needs n1 == n2, got {}", dims.str()));
    t = make_spd(gaussian_tensor(dims, a.seed));
  } else if (a.kind == "ones") {
    t = ones(a.n1, a.n2, a.n3);
  } else {
    t = zeros(a.n1, a.n2, a.n3);
  }
  save_any(a.out, t);
  fmt::print(out, "dims: {}\n", t.dims().str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Third-order tensor equations under the T-product", "tensoreq"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads for tensor operations (default: all cores)")
      ->check(CLI::PositiveNumber);

  TprodArgs tp;
  auto* tprod_cmd = app.add_subcommand("tprod", "Write A * B");
  tprod_cmd->add_option("a", tp.a, "Left factor")->required();
  tprod_cmd->add_option("b", tp.b, "Right factor")->required();
  tprod_cmd->add_option("out", tp.out, "Output file")->required();
  tprod_cmd->add_flag("--verify", tp.verify, "Compare against the block-circulant product");

  SolveArgs sv;
  auto* solve_cmd = app.add_subcommand("solve", "Solve C * X = D");
  solve_cmd->add_option("c", sv.c, "Coefficient tensor")->required();
  solve_cmd->add_option("d", sv.d, "Right-hand side")->required();
  solve_cmd->add_option("--mode", sv.mode, "spd, consistent or lsq")
      ->check(CLI::IsMember({"spd", "consistent", "lsq"}))
      ->capture_default_str();
  solve_cmd->add_option("--out", sv.out, "Write the solution here");
  add_solve_options(solve_cmd, sv.opts, "absolute");

  DegradeArgs dg;
  auto* degrade_cmd = app.add_subcommand("degrade", "Write C * image");
  degrade_cmd->add_option("c", dg.c, "Degradation tensor (h, h, n3)")->required();
  degrade_cmd->add_option("image", dg.image, "Input image or tensor (h, w, n3)")->required();
  degrade_cmd->add_option("out", dg.out, "Output file")->required();

  RecoverArgs rc;
  auto* recover_cmd = app.add_subcommand("recover", "Least-squares recovery of a degraded image");
  recover_cmd->add_option("c", rc.c, "Degradation tensor")->required();
  recover_cmd->add_option("degraded", rc.degraded, "Degraded image or tensor")->required();
  recover_cmd->add_option("out", rc.out, "Recovered image or tensor")->required();
  recover_cmd->add_option("--reference", rc.reference, "Original image for PSNR");
  add_solve_options(recover_cmd, rc.opts, "relative");

  std::string px, py;
  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR between two images or tensors");
  psnr_cmd->add_option("x", px)->required();
  psnr_cmd->add_option("y", py)->required();

  std::string info_path;
  auto* info_cmd = app.add_subcommand("info", "Describe a tensor or image file");
  info_cmd->add_option("file", info_path)->required();

  GenArgs gn;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a tensor");
  gen_cmd->add_option("kind", gn.kind, "gaussian, spd, ones or zeros")
      ->check(CLI::IsMember({"gaussian", "spd", "ones", "zeros"}))
      ->required();
  gen_cmd->add_option("n1", gn.n1)->required();
  gen_cmd->add_option("n2", gn.n2)->required();
  gen_cmd->add_option("n3", gn.n3)->required();
  gen_cmd->add_option("out", gn.out, "Output file")->required();
  gen_cmd->add_option("--seed", gn.seed, "RNG seed")->capture_default_str();

  // CLI11 consumes its argument vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (threads > 0) set_num_threads(threads);
  try {
    if (tprod_cmd->parsed()) return cmd_tprod(tp, out);
    if (solve_cmd->parsed()) return cmd_solve(sv, out, err);
    if (degrade_cmd->parsed()) return cmd_degrade(dg, out);
    if (recover_cmd->parsed()) return cmd_recover(rc, out, err);
    if (psnr_cmd->parsed()) return cmd_psnr(px, py, out);
    if (info_cmd->parsed()) return cmd_info(info_path, out);
    return cmd_gen(gn, out);
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIoFailure;
  }
}

}  // namespace tensoreq::cli
