#include "wgbh/weak_gradient.hpp"

namespace wgbh {

WeakGradOperator::WeakGradOperator(const Mesh& mesh, const RtSpace& rt)
    : mesh_(&mesh), rt_(&rt) {
  const int j = rt.order();
  const int idim = interior_dim(j);
  const int edim = edge_dim(j);
  const int r = rt.local_dim();
  nloc_ = idim + 3 * edim;

  g_.resize(static_cast<std::size_t>(mesh.num_triangles()));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(r, nloc_);

    // Interior block: -(phi_m, div q_i)_K, exact through the interior mass.
    b.leftCols(idim) =
        -(interior_mass(mesh, t, j) * rt.local(t).div).transpose();

    // Edge blocks collapse to single entries by moment duality:
    // <Pt_p, q_i . n_out>_{e_k} = sign * |e_k| * delta_{i,(k,p)}.
    for (int k = 0; k < 3; ++k) {
      const auto& te = mesh.tri_edges[static_cast<std::size_t>(t)][k];
      const double se = te.sign * mesh.edge_length(te.edge);
      for (int p = 0; p < edim; ++p)
        b(rt.edge_dof(k, p), idim + k * edim + p) = se;
    }

    const auto ldlt = rt.local(t).mass.ldlt();
    if (ldlt.info() != Eigen::Success)
      throw SolverError("singular RT mass matrix on triangle " +
                        std::to_string(t));
    g_[static_cast<std::size_t>(t)] = ldlt.solve(b);
  }
}

Eigen::VectorXd WeakGradOperator::local_coeffs(const WgFunction& v,
                                               int t) const {
  const int j = rt_->order();
  const int idim = interior_dim(j);
  const int edim = edge_dim(j);
  Eigen::VectorXd loc(nloc_);
  loc.head(idim) = v.interior.segment(static_cast<long>(t) * idim, idim);
  for (int k = 0; k < 3; ++k) {
    const int e = mesh_->tri_edges[static_cast<std::size_t>(t)][k].edge;
    loc.segment(idim + k * edim, edim) =
        v.edge.segment(static_cast<long>(e) * edim, edim);
  }
  return loc;
}

void WeakGradOperator::scatter_add(int t, const Eigen::VectorXd& loc,
                                   WgFunction& v) const {
  const int j = rt_->order();
  const int idim = interior_dim(j);
  const int edim = edge_dim(j);
  v.interior.segment(static_cast<long>(t) * idim, idim) += loc.head(idim);
  for (int k = 0; k < 3; ++k) {
    const int e = mesh_->tri_edges[static_cast<std::size_t>(t)][k].edge;
    v.edge.segment(static_cast<long>(e) * edim, edim) +=
        loc.segment(idim + k * edim, edim);
  }
}

RtField WeakGradOperator::apply(const WgFunction& v) const {
  if (v.j != rt_->order())
    throw InvalidArgument("WgFunction order does not match operator");
  const int r = rt_->local_dim();
  RtField out = rt_->zero_field();
  for (int t = 0; t < mesh_->num_triangles(); ++t)
    out.coeffs.segment(static_cast<long>(t) * r, r) =
        g_[static_cast<std::size_t>(t)] * local_coeffs(v, t);
  return out;
}

}  // namespace wgbh
