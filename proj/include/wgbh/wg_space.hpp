#pragma once

#include <Eigen/Dense>

#include "wgbh/mesh.hpp"
#include "wgbh/quadrature.hpp"

namespace wgbh {

/// Local dimension of P_j on a triangle interior.
constexpr int interior_dim(int j) { return (j + 1) * (j + 2) / 2; }
/// Local dimension of P_j on an edge.
constexpr int edge_dim(int j) { return j + 1; }

/// One function of the weak space: piecewise P_j interior values plus
/// piecewise P_j edge values, stored as flat coefficient vectors
/// (triangle-major and edge-major respectively).
///
/// Interior basis on triangle K: monomials in ((x,y) - centroid)/h_K,
/// ordered {1, xi, eta} for j = 1. Edge basis: shifted Legendre {1, 2t-1}
/// in the global arclength parameter of the edge.
struct WgFunction {
  int j = 0;
  Eigen::VectorXd interior;
  Eigen::VectorXd edge;
};

WgFunction zero_wg_function(const Mesh& mesh, int j);

/// Deterministic random coefficients in [-1, 1]; with zero_trace the
/// boundary-edge coefficients are cleared (membership in the zero-trace
/// subspace).
WgFunction random_wg_function(const Mesh& mesh, int j, unsigned seed,
                              bool zero_trace = false);

WgFunction operator+(const WgFunction& a, const WgFunction& b);
WgFunction operator-(const WgFunction& a, const WgFunction& b);
WgFunction operator*(double s, const WgFunction& v);

/// Global numbering for the weak space: interior DOFs first (triangle-major),
/// then edge DOFs (edge-major). The reduced numbering drops boundary-edge
/// DOFs and enumerates the zero-trace subspace.
struct DofMap {
  int j = 0;
  int idim = 1;
  int edim = 1;
  int n_tri = 0;
  int n_edge = 0;

  std::vector<int> full_to_reduced;  // -1 on boundary-edge DOFs
  std::vector<int> reduced_to_full;

  /// Integral of each interior basis function over its triangle; zero on edge
  /// slots. dot(mean_functional, flatten(v)) is the exact mean of v_0.
  Eigen::VectorXd mean_functional;

  int n_total() const { return n_tri * idim + n_edge * edim; }
  int n_reduced() const { return static_cast<int>(reduced_to_full.size()); }
  int interior_dof(int t, int k) const { return t * idim + k; }
  int edge_dof(int e, int k) const { return n_tri * idim + e * edim + k; }
};

DofMap make_dof_map(const Mesh& mesh, int j);

/// Flatten/unflatten between WgFunction and the global DOF vector.
Eigen::VectorXd flatten(const DofMap& dm, const WgFunction& v);
WgFunction unflatten(const DofMap& dm, const Eigen::VectorXd& x);

/// Interior basis function k of triangle t at point x.
double interior_basis(const Mesh& mesh, int t, int k, int j, const Vec2& x);
Vec2 interior_basis_grad(const Mesh& mesh, int t, int k, int j);
/// Edge basis function k at arclength parameter t01 in [0, 1].
double edge_basis(int k, double t01);

/// Value of v_0 at a point of triangle t.
double eval(const Mesh& mesh, const WgFunction& v, int t, const Vec2& x);
/// Value of v_b at arclength parameter t01 of edge e.
double eval_edge(const Mesh& mesh, const WgFunction& v, int e, double t01);

/// Elementwise/edgewise L2 projection Q_h v = {Q_0 v, Q_b v}.
WgFunction project_Qh(const ScalarField& v, const Mesh& mesh, int j,
                      int quad_tri_degree = 8, int quad_edge_degree = 10);

/// Integral of v_0 over the domain (exact).
double mean_value(const WgFunction& v, const Mesh& mesh);

/// Local interior mass matrix of triangle t (exact).
Eigen::MatrixXd interior_mass(const Mesh& mesh, int t, int j);
/// Edge mass matrix of edge e; diagonal in the shifted Legendre basis.
Eigen::MatrixXd edge_mass(const Mesh& mesh, int e, int j);

}  // namespace wgbh
