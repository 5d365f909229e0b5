#pragma once

#include <Eigen/Dense>

#include "wgbh/mesh.hpp"
#include "wgbh/quadrature.hpp"

namespace wgbh {

/// Local dimension of RT_j on a triangle.
constexpr int rt_dim(int j) { return (j + 1) * (j + 3); }

/// Per-element coefficients of a field in the broken Raviart-Thomas space;
/// triangle-major, rt_dim(j) coefficients per triangle.
struct RtField {
  int j = 0;
  Eigen::VectorXd coeffs;
};

/// Local RT_j basis tables for one triangle. The basis is dual to
///   edge moments   m_{k,p}(q) = |e_k|^{-1} int_{e_k} (q . n_g) Pt_p ds
///   interior (j=1) m_{a}(q)   = |K|^{-1}  int_K  q_a dx
/// where n_g is the global edge normal and Pt_p the shifted Legendre
/// polynomials in the global edge parameter. Duality makes the normal trace
/// of basis (k,p) on edge k equal Pt_p / gamma_p and zero on other edges,
/// so RT coefficients of a field are exactly its (normalized) DOF values.
struct RtLocal {
  Eigen::MatrixXd coeff;  // generator coords of the dual basis, column-major
  Eigen::MatrixXd mass;   // (q_i, q_k)_K, symmetric positive definite
  Eigen::MatrixXd div;    // divergence of each basis in the interior monomials
};

/// All per-element RT tables for a mesh; immutable once built.
class RtSpace {
 public:
  RtSpace(const Mesh& mesh, int j);

  const Mesh& mesh() const { return *mesh_; }
  int order() const { return j_; }
  int local_dim() const { return r_; }
  const RtLocal& local(int t) const { return local_[static_cast<std::size_t>(t)]; }

  /// Local DOF index of moment p on local edge k.
  int edge_dof(int k, int p) const { return k * (j_ + 1) + p; }
  /// Local DOF index of interior moment a (j >= 1 only).
  int interior_dof(int a) const { return 3 * (j_ + 1) + a; }

  Vec2 eval_basis(int t, int i, const Vec2& x) const;
  Vec2 eval(const RtField& q, int t, const Vec2& x) const;

  RtField zero_field() const;
  double l2_norm(const RtField& q) const;

  /// Divergence of q restricted to triangle t, as interior-monomial coeffs.
  Eigen::VectorXd divergence(const RtField& q, int t) const;

  /// Coefficients (shifted Legendre) of the normal trace q|_K . n_g on edge
  /// e seen from triangle t; t must be adjacent to e.
  Eigen::VectorXd normal_trace(const RtField& q, int t, int e) const;

  /// L2 norm over edge e of the normal jump of q. Interior edges use the
  /// two-sided jump; boundary edges the one-sided trace.
  double normal_jump_norm(const RtField& q, int e) const;

 private:
  const Mesh* mesh_;
  int j_;
  int r_;
  std::vector<RtLocal> local_;

  Vec2 eval_generator(int t, int m, const Vec2& x) const;
};

/// Elementwise L2 projection onto the broken RT space.
RtField project_Ph(const RtSpace& rt, const VectorField& q,
                   int quad_tri_degree = 8);

/// Canonical RT interpolation by edge/interior moments; the result has
/// continuous normal components across interior edges by construction.
RtField interpolate_Pih(const RtSpace& rt, const VectorField& q,
                        int quad_edge_degree = 10, int quad_tri_degree = 8);

}  // namespace wgbh
