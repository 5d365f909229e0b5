#include "wgbh/projections.hpp"

#include <Eigen/SparseLU>

namespace wgbh {

namespace {

/// Right-hand side (Pi_h grad v, grad_w psi) for every psi in the full space.
Eigen::VectorXd interp_rhs(const Mesh& mesh, const DofMap& dm,
                           const WeakGradOperator& op, const RtField& data) {
  const RtSpace& rt = op.rt();
  const int r = rt.local_dim();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dm.n_total());
  WgFunction acc = zero_wg_function(mesh, dm.j);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd loc =
        op.local(t).transpose() *
        (rt.local(t).mass * data.coeffs.segment(static_cast<long>(t) * r, r));
    op.scatter_add(t, loc, acc);
  }
  rhs = flatten(dm, acc);
  return rhs;
}

}  // namespace

ProjectionResult ritz_project(const Mesh& mesh, const DofMap& dm,
                              const WeakGradOperator& op,
                              const VectorField& grad_v, int quad_edge_degree,
                              int quad_tri_degree) {
  ProjectionResult result;
  result.rhs_interp =
      interpolate_Pih(op.rt(), grad_v, quad_edge_degree, quad_tri_degree);
  const Eigen::VectorXd rhs_full = interp_rhs(mesh, dm, op, result.rhs_interp);

  // Restrict the stiffness form to the zero-trace subspace; positive
  // definite there.
  const SparseMat a = assemble_stiffness(mesh, dm, op);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros()));
  for (int o = 0; o < a.outerSize(); ++o)
    for (SparseMat::InnerIterator it(a, o); it; ++it) {
      const int ri = dm.full_to_reduced[static_cast<std::size_t>(it.row())];
      const int rj = dm.full_to_reduced[static_cast<std::size_t>(it.col())];
      if (ri >= 0 && rj >= 0) trips.emplace_back(ri, rj, it.value());
    }
  SparseMat a00(dm.n_reduced(), dm.n_reduced());
  a00.setFromTriplets(trips.begin(), trips.end());

  Eigen::VectorXd rhs_red(dm.n_reduced());
  for (int r = 0; r < dm.n_reduced(); ++r)
    rhs_red(r) = rhs_full(dm.reduced_to_full[static_cast<std::size_t>(r)]);

  const Eigen::VectorXd x = solve_spd(a00, rhs_red);
  const double rhs_norm = rhs_red.norm();
  result.residual = rhs_norm > 0.0 ? (a00 * x - rhs_red).norm() / rhs_norm
                                   : (a00 * x - rhs_red).norm();

  Eigen::VectorXd full = Eigen::VectorXd::Zero(dm.n_total());
  for (int r = 0; r < dm.n_reduced(); ++r)
    full(dm.reduced_to_full[static_cast<std::size_t>(r)]) = x(r);
  result.projected = unflatten(dm, full);
  return result;
}

ProjectionResult neumann_project(const Mesh& mesh, const DofMap& dm,
                                 const WeakGradOperator& op,
                                 const VectorField& grad_v,
                                 int quad_edge_degree, int quad_tri_degree) {
  ProjectionResult result;
  result.rhs_interp =
      interpolate_Pih(op.rt(), grad_v, quad_edge_degree, quad_tri_degree);
  const Eigen::VectorXd rhs_full = interp_rhs(mesh, dm, op, result.rhs_interp);

  // Bordered system [[A, m], [m^T, 0]]; A is singular only along the global
  // constant, which the mean functional does not annihilate.
  const SparseMat a = assemble_stiffness(mesh, dm, op);
  const int n = dm.n_total();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros()) + 2 * dm.n_tri);
  for (int o = 0; o < a.outerSize(); ++o)
    for (SparseMat::InnerIterator it(a, o); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()),
                         static_cast<int>(it.col()), it.value());
  for (int i = 0; i < n; ++i) {
    const double m = dm.mean_functional(i);
    if (m == 0.0) continue;
    trips.emplace_back(i, n, m);
    trips.emplace_back(n, i, m);
  }
  SparseMat bordered(n + 1, n + 1);
  bordered.setFromTriplets(trips.begin(), trips.end());

  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = rhs_full;
  rhs(n) = 0.0;

  Eigen::SparseLU<SparseMat> lu;
  lu.compute(bordered);
  if (lu.info() != Eigen::Success)
    throw SolverError("Neumann projection factorization failed");
  const Eigen::VectorXd x = lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  const double res = (bordered * x - rhs).norm();
  result.residual = rhs_norm > 0.0 ? res / rhs_norm : res;
  if (!(result.residual <= 1e-10))
    throw SolverError("Neumann projection residual exceeds contract");

  result.projected = unflatten(dm, x.head(n));
  result.multiplier = x(n);
  return result;
}

}  // namespace wgbh
