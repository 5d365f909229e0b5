#pragma once

#include <string>

#include "wgbh/assembly.hpp"

namespace wgbh {

enum class SolverMethod {
  Direct,  // sparse LU of the full symmetric indefinite system
  Minres,  // minimum-residual iteration with a block-diagonal preconditioner
};

struct SolveStats {
  std::string method;
  int n = 0;
  int iterations = 0;  // 0 for the direct path
  double residual_rel = 0.0;
};

struct Solution {
  WgFunction u;  // boundary-edge coefficients filled back in from the lift
  WgFunction w;
  double residual_rel = 0.0;
  SolveStats stats;
};

/// Solve the assembled saddle-point system. The algebraic residual is always
/// computed; a relative residual above 1e-10 raises SolverError.
Solution solve(const Mesh& mesh, const DofMap& dm, const LinearSystem& sys,
               SolverMethod method = SolverMethod::Direct);

/// Cholesky solve for symmetric positive definite systems, with non-SPD
/// detection and the same residual contract.
Eigen::VectorXd solve_spd(const SparseMat& matrix, const Eigen::VectorXd& rhs);

}  // namespace wgbh
