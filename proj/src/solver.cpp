#include "capinf/solver.hpp"

#include <cmath>
#include <cstdio>

namespace capinf {

namespace {

// y = A x for the CSR system (diagonal stored separately).
void apply(const DiscreteSystem& s, const std::vector<double>& x,
           std::vector<double>& y) {
  const std::size_t n = s.size();
  for (std::size_t r = 0; r < n; ++r) {
    double acc = s.diag[r] * x[r];
    for (int64_t k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k)
      acc += s.val[k] * x[s.col[k]];
    y[r] = acc;
  }
}

double dot_product(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& a) {
  return std::sqrt(dot_product(a, a));
}

}  // namespace

std::vector<double> solve_spd(const DiscreteSystem& system,
                              const SolveOptions& options,
                              SolveReport* report) {
  const std::size_t n = system.size();
  if (n == 0) throw ValidationError("solve: empty system");
  for (double d : system.diag)
    if (!(d > 0.0)) throw NumericalError("solve: non-positive diagonal");

  const double bnorm = norm2(system.rhs);
  SolveReport rep;
  if (bnorm == 0.0) {
    rep.converged = true;
    if (report) *report = rep;
    return std::vector<double>(n, 0.0);
  }

  std::vector<double> x(n, 0.0), r(system.rhs), z(n), p(n), Ap(n);
  std::vector<double> best_x(n, 0.0);
  double best_rel = 1.0;
  rep.residual_history.push_back(best_rel);

  auto precondition = [&](const std::vector<double>& in,
                          std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / system.diag[i];
  };

  precondition(r, z);
  p = z;
  double rz = dot_product(r, z);
  int stall = 0;

  for (int it = 1; it <= options.max_iterations; ++it) {
    apply(system, p, Ap);
    double pAp = dot_product(p, Ap);
    if (!(pAp > 0.0)) {  // breakdown: restart from the best iterate
      x = best_x;
      apply(system, x, Ap);
      for (std::size_t i = 0; i < n; ++i) r[i] = system.rhs[i] - Ap[i];
      precondition(r, z);
      p = z;
      rz = dot_product(r, z);
      ++rep.restarts;
      continue;
    }
    double alpha = rz / pAp;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    double rel = norm2(r) / bnorm;
    rep.iterations = it;
    if (rel < best_rel) {
      best_rel = rel;
      best_x = x;
      stall = 0;
    } else {
      ++stall;
    }
    rep.residual_history.push_back(best_rel);
    if (best_rel <= options.tolerance) break;

    if (stall >= options.stall_window) {
      // Prolonged stagnation: recompute the residual from the best iterate
      // and restart the Krylov space. Deliberately rare — every restart
      // discards the accumulated conjugacy, so the window is wide.
      x = best_x;
      apply(system, x, Ap);
      for (std::size_t i = 0; i < n; ++i) r[i] = system.rhs[i] - Ap[i];
      precondition(r, z);
      p = z;
      rz = dot_product(r, z);
      ++rep.restarts;
      stall = 0;
      continue;
    }

    precondition(r, z);
    double rz_next = dot_product(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  rep.relative_residual = best_rel;
  rep.converged = best_rel <= options.tolerance;
  if (report) *report = rep;
  if (!rep.converged) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "solve: residual %.3e after %d iterations (target %.3e)",
                  best_rel, rep.iterations, options.tolerance);
    throw NumericalError(msg);
  }
  return best_x;
}

std::optional<double> richardson_order(double v_h, double v_h2, double v_h4) {
  double num = v_h - v_h2;
  double den = v_h2 - v_h4;
  if (den == 0.0) return std::nullopt;
  double ratio = num / den;
  if (!(ratio > 0.0)) return std::nullopt;
  return std::log2(ratio);
}

}  // namespace capinf
