#pragma once

#include <Eigen/Sparse>

#include "wgbh/weak_gradient.hpp"

namespace wgbh {

using SparseMat = Eigen::SparseMatrix<double>;

/// Boundary data evaluated with the outward unit normal, e.g. normal
/// derivatives g2(x, n) = grad u(x) . n.
using BoundaryField = std::function<double(const Vec2&, const Vec2&)>;

struct QuadConfig {
  int data_tri_degree = 8;    // load and boundary data against test functions
  int data_edge_degree = 10;
};

/// Sparse symmetric saddle-point system for the coupled pair (w_h, u_h):
///   [ S      -A_red ] [w]   [ -<g2, phi_b> + A * lift ]
///   [ -A_red^T   0  ] [u] = [ -(f, psi_0)             ]
/// over all w-DOFs and the zero-trace u-DOFs; essential boundary values
/// u_b = Q_b g1 are eliminated into `lift` (full-size vector, nonzero only
/// on boundary-edge DOF slots).
struct LinearSystem {
  SparseMat matrix;
  Eigen::VectorXd rhs;
  int n_w = 0;
  int n_u = 0;
  Eigen::VectorXd lift;
};

/// Stabilized inner product <<.,.>> as a sparse matrix over all DOFs:
/// element mass plus h_K-weighted boundary penalty on v_0 - v_b.
SparseMat assemble_stab_mass(const Mesh& mesh, const DofMap& dm);

/// (grad_w . , grad_w .) over the full space; symmetric positive
/// semidefinite with the global constant in its kernel.
SparseMat assemble_stiffness(const Mesh& mesh, const DofMap& dm,
                             const WeakGradOperator& op);

/// L2 projection of boundary data onto boundary-edge DOFs (zero elsewhere).
Eigen::VectorXd project_boundary_data(const Mesh& mesh, const DofMap& dm,
                                      const ScalarField& g1,
                                      int quad_edge_degree = 10);

/// <g2, phi_b> over boundary edges against every edge test function.
Eigen::VectorXd assemble_boundary_pairing(const Mesh& mesh, const DofMap& dm,
                                          const BoundaryField& g2,
                                          int quad_edge_degree = 10);

/// (f, phi_0) against every interior test function.
Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dm,
                              const ScalarField& f, int quad_tri_degree = 8);

LinearSystem assemble_system(const Mesh& mesh, const DofMap& dm,
                             const WeakGradOperator& op, const ScalarField& f,
                             const ScalarField& g1, const BoundaryField& g2,
                             const QuadConfig& quad = {});

}  // namespace wgbh
