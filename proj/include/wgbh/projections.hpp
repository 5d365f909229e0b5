#pragma once

#include "wgbh/norms.hpp"
#include "wgbh/solver.hpp"

namespace wgbh {

struct ProjectionResult {
  WgFunction projected;
  RtField rhs_interp;      // the interpolated gradient datum
  double residual = 0.0;   // relative algebraic residual
  double multiplier = 0.0; // Lagrange multiplier (Neumann only)
};

/// Ritz projection: the zero-trace weak solution of
///   (grad_w R_h v, grad_w psi) = (Pi_h grad v, grad_w psi)
/// over the zero-trace subspace. grad_v must be evaluable on edges.
ProjectionResult ritz_project(const Mesh& mesh, const DofMap& dm,
                              const WeakGradOperator& op,
                              const VectorField& grad_v,
                              int quad_edge_degree = 10,
                              int quad_tri_degree = 8);

/// Neumann projection over the mean-zero subspace: the same equation tested
/// against the full space, with a single Lagrange multiplier enforcing
/// mean-zero of the interior part. The input should carry mean zero.
ProjectionResult neumann_project(const Mesh& mesh, const DofMap& dm,
                                 const WeakGradOperator& op,
                                 const VectorField& grad_v,
                                 int quad_edge_degree = 10,
                                 int quad_tri_degree = 8);

}  // namespace wgbh
