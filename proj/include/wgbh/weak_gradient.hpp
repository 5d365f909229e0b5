#pragma once

#include <Eigen/Dense>

#include "wgbh/rt_space.hpp"
#include "wgbh/wg_space.hpp"

namespace wgbh {

/// Per-element linear map from local weak-function DOFs to the RT
/// coefficients of the discrete weak gradient. Local DOF order: interior
/// basis first, then the edge bases of local edges 0, 1, 2.
///
/// Each G_K solves M_K G_K = B_K where row i of B_K realizes
///   -(v_0, div q_i)_K + <v_b, q_i . n>_dK
/// against RT basis q_i; columns representing v_0 = v_b = constant map to
/// zero by the divergence theorem.
class WeakGradOperator {
 public:
  WeakGradOperator(const Mesh& mesh, const RtSpace& rt);

  const RtSpace& rt() const { return *rt_; }
  const Mesh& mesh() const { return *mesh_; }
  int order() const { return rt_->order(); }
  int local_wg_dim() const { return nloc_; }

  const Eigen::MatrixXd& local(int t) const {
    return g_[static_cast<std::size_t>(t)];
  }

  /// Gather the local WG coefficient vector of triangle t.
  Eigen::VectorXd local_coeffs(const WgFunction& v, int t) const;

  /// Scatter-add a local WG vector into (interior, edge) coefficient arrays.
  void scatter_add(int t, const Eigen::VectorXd& loc, WgFunction& v) const;

  RtField apply(const WgFunction& v) const;

 private:
  const Mesh* mesh_;
  const RtSpace* rt_;
  int nloc_;
  std::vector<Eigen::MatrixXd> g_;
};

}  // namespace wgbh
