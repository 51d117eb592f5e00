#pragma once

#include <optional>
#include <vector>

#include "capinf/discrete.hpp"

namespace capinf {

struct SolveOptions {
  double tolerance = 1e-9;   // relative residual target
  int max_iterations = 50000;
  // Restart CG only after this many steps with no new best residual.  The
  // residual 2-norm plateaus routinely while the error A-norm keeps falling,
  // so the window must comfortably exceed any natural plateau; small values
  // degrade the method to steepest descent.
  int stall_window = 250;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
  int restarts = 0;
  // Best-so-far relative residual after each iteration (non-increasing).
  std::vector<double> residual_history;
};

/// Solves the SPD system with Jacobi-preconditioned conjugate gradients.
/// Fully deterministic: fixed traversal order, serial arithmetic, zero
/// initial guess. The returned x is the best iterate seen (by residual),
/// which, with the rare restart on breakdown or prolonged stagnation, makes
/// the method robust on strongly graded meshes. Throws NumericalError if
/// the tolerance is not reached.
std::vector<double> solve_spd(const DiscreteSystem& system,
                              const SolveOptions& options, SolveReport* report);

/// Observed convergence order from three values of a quantity computed at
/// spacings h, h/2 and h/4:  p = log2((v_h - v_{h/2}) / (v_{h/2} - v_{h/4})).
/// Empty if the differences have opposite signs or the denominator vanishes.
std::optional<double> richardson_order(double v_h, double v_h2, double v_h4);

}  // namespace capinf
