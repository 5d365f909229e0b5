#pragma once

#include <string>
#include <string_view>

#include "wgbh/assembly.hpp"

namespace wgbh {

/// One manufactured test problem on the unit square: exact solution u, the
/// dual variable w = -laplace(u), the load f = laplace^2(u), and analytic
/// gradients. Clamped boundary data is read off u: g1 = u|_boundary and
/// g2 = grad u . n.
struct ProblemSpec {
  std::string name;
  ScalarField exact_u;
  VectorField grad_u;
  ScalarField exact_w;
  VectorField grad_w;  // unset when w is too singular to interpolate
  ScalarField rhs_f;
  bool projections_allowed = true;

  ScalarField g1() const;
  BoundaryField g2() const;
};

/// The four built-in problems: u1 (polynomial bubble, fully homogeneous),
/// u2 (sine product, g1 = 0, g2 != 0), u3 (cosine product, g1 != 0, g2 = 0),
/// u4 (corner singularity r^{3/2}, both data nonzero, f = 0).
ProblemSpec builtin_problem(std::string_view name);

/// Finite-difference self-consistency of the hand-derived fields: checks
/// -laplace(u) = w, -laplace(w) = f and both gradients at interior sample
/// points. Throws InvalidArgument on mismatch.
void check_problem_consistency(const ProblemSpec& problem);

}  // namespace wgbh
