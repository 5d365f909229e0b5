#include "wgbh/assembly.hpp"

#include <vector>

namespace wgbh {

namespace {

using Triplet = Eigen::Triplet<double>;

/// Global DOF indices of the local block [interior | edge0 | edge1 | edge2].
std::vector<int> local_to_global(const Mesh& mesh, const DofMap& dm, int t) {
  std::vector<int> idx(static_cast<std::size_t>(dm.idim + 3 * dm.edim));
  int c = 0;
  for (int k = 0; k < dm.idim; ++k) idx[c++] = dm.interior_dof(t, k);
  for (int k = 0; k < 3; ++k) {
    const int e = mesh.tri_edges[static_cast<std::size_t>(t)][k].edge;
    for (int p = 0; p < dm.edim; ++p) idx[c++] = dm.edge_dof(e, p);
  }
  return idx;
}

}  // namespace

SparseMat assemble_stab_mass(const Mesh& mesh, const DofMap& dm) {
  const int j = dm.j;
  const int nloc = dm.idim + 3 * dm.edim;
  const QuadRule edge_rule = segment_rule(2 * j + 2);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nloc * nloc);
  Eigen::MatrixXd local(nloc, nloc);
  Eigen::VectorXd diff(nloc);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    local.setZero();
    local.topLeftCorner(dm.idim, dm.idim) = interior_mass(mesh, t, j);

    const double hk = mesh.h_per_tri[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.tri_edges[static_cast<std::size_t>(t)][k].edge;
      const auto ep = mesh.edge_points(e);
      const Vec2 d = ep[1] - ep[0];
      const double len = d.norm();
      for (int q = 0; q < edge_rule.size(); ++q) {
        const double t01 = edge_rule.points(q, 0);
        const Vec2 x = ep[0] + t01 * d;
        // diff holds the trace of (v_0 - v_b) per local basis function.
        diff.setZero();
        for (int m = 0; m < dm.idim; ++m)
          diff(m) = interior_basis(mesh, t, m, j, x);
        for (int p = 0; p < dm.edim; ++p)
          diff(dm.idim + k * dm.edim + p) = -edge_basis(p, t01);
        // Outer product first: scaling the symmetric product keeps the
        // matrix bit-exact symmetric.
        const Eigen::MatrixXd outer = diff * diff.transpose();
        local += (hk * edge_rule.weights(q) * len) * outer;
      }
    }

    const auto idx = local_to_global(mesh, dm, t);
    for (int a = 0; a < nloc; ++a)
      for (int b = 0; b < nloc; ++b)
        trips.emplace_back(idx[static_cast<std::size_t>(a)],
                           idx[static_cast<std::size_t>(b)], local(a, b));
  }

  SparseMat s(dm.n_total(), dm.n_total());
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

SparseMat assemble_stiffness(const Mesh& mesh, const DofMap& dm,
                             const WeakGradOperator& op) {
  const int nloc = dm.idim + 3 * dm.edim;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nloc * nloc);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::MatrixXd& g = op.local(t);
    Eigen::MatrixXd local = g.transpose() * op.rt().local(t).mass * g;
    local = 0.5 * (local + local.transpose().eval());
    const auto idx = local_to_global(mesh, dm, t);
    for (int a = 0; a < nloc; ++a)
      for (int b = 0; b < nloc; ++b)
        trips.emplace_back(idx[static_cast<std::size_t>(a)],
                           idx[static_cast<std::size_t>(b)], local(a, b));
  }

  SparseMat a(dm.n_total(), dm.n_total());
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

Eigen::VectorXd project_boundary_data(const Mesh& mesh, const DofMap& dm,
                                      const ScalarField& g1,
                                      int quad_edge_degree) {
  Eigen::VectorXd lift = Eigen::VectorXd::Zero(dm.n_total());
  const QuadRule rule = segment_rule(quad_edge_degree);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.boundary_edge[static_cast<std::size_t>(e)]) continue;
    const auto ep = mesh.edge_points(e);
    const Vec2 d = ep[1] - ep[0];
    Eigen::VectorXd moments = Eigen::VectorXd::Zero(dm.edim);
    for (int q = 0; q < rule.size(); ++q) {
      const double t01 = rule.points(q, 0);
      const double gv = g1(ep[0] + t01 * d) * rule.weights(q);
      for (int p = 0; p < dm.edim; ++p) moments(p) += gv * edge_basis(p, t01);
    }
    // Diagonal edge mass in the Legendre basis; the length cancels against
    // the parameter-space moments.
    lift(dm.edge_dof(e, 0)) = moments(0);
    if (dm.edim > 1) lift(dm.edge_dof(e, 1)) = 3.0 * moments(1);
  }
  return lift;
}

Eigen::VectorXd assemble_boundary_pairing(const Mesh& mesh, const DofMap& dm,
                                          const BoundaryField& g2,
                                          int quad_edge_degree) {
  Eigen::VectorXd vec = Eigen::VectorXd::Zero(dm.n_total());
  const QuadRule edge_rule = segment_rule(quad_edge_degree);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.boundary_edge[static_cast<std::size_t>(e)]) continue;
    const auto ep = mesh.edge_points(e);
    const Vec2 d = ep[1] - ep[0];
    const double len = d.norm();
    // Exactly one adjacent triangle on the boundary fixes the outward normal.
    const int t = mesh.edge_tris[static_cast<std::size_t>(e)][0];
    double sign = 0.0;
    for (int k = 0; k < 3; ++k)
      if (mesh.tri_edges[static_cast<std::size_t>(t)][k].edge == e)
        sign = mesh.tri_edges[static_cast<std::size_t>(t)][k].sign;
    const Vec2 n_out = sign * mesh.edge_normal(e);
    for (int q = 0; q < edge_rule.size(); ++q) {
      const double t01 = edge_rule.points(q, 0);
      const double gv = g2(ep[0] + t01 * d, n_out) * edge_rule.weights(q) * len;
      for (int p = 0; p < dm.edim; ++p)
        vec(dm.edge_dof(e, p)) += gv * edge_basis(p, t01);
    }
  }
  return vec;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dm,
                              const ScalarField& f, int quad_tri_degree) {
  Eigen::VectorXd vec = Eigen::VectorXd::Zero(dm.n_total());
  const QuadRule tri_rule = triangle_rule(quad_tri_degree);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto tri = mesh.tri_points(t);
    const Vec2 d1 = tri[1] - tri[0];
    const Vec2 d2 = tri[2] - tri[0];
    const double jac = 2.0 * mesh.area_per_tri[static_cast<std::size_t>(t)];
    for (int q = 0; q < tri_rule.size(); ++q) {
      const Vec2 x =
          tri[0] + tri_rule.points(q, 0) * d1 + tri_rule.points(q, 1) * d2;
      const double fv = f(x) * tri_rule.weights(q) * jac;
      for (int k = 0; k < dm.idim; ++k)
        vec(dm.interior_dof(t, k)) += fv * interior_basis(mesh, t, k, dm.j, x);
    }
  }
  return vec;
}

LinearSystem assemble_system(const Mesh& mesh, const DofMap& dm,
                             const WeakGradOperator& op, const ScalarField& f,
                             const ScalarField& g1, const BoundaryField& g2,
                             const QuadConfig& quad) {
  const SparseMat s = assemble_stab_mass(mesh, dm);
  const SparseMat a = assemble_stiffness(mesh, dm, op);

  LinearSystem sys;
  sys.n_w = dm.n_total();
  sys.n_u = dm.n_reduced();
  sys.lift = project_boundary_data(mesh, dm, g1, quad.data_edge_degree);

  const int n = sys.n_w + sys.n_u;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(s.nonZeros()) +
                2 * static_cast<std::size_t>(a.nonZeros()));
  for (int o = 0; o < s.outerSize(); ++o)
    for (SparseMat::InnerIterator it(s, o); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()),
                         static_cast<int>(it.col()), it.value());

  for (int o = 0; o < a.outerSize(); ++o)
    for (SparseMat::InnerIterator it(a, o); it; ++it) {
      const int red = dm.full_to_reduced[static_cast<std::size_t>(it.col())];
      if (red < 0) continue;
      trips.emplace_back(static_cast<int>(it.row()), sys.n_w + red,
                         -it.value());
      trips.emplace_back(sys.n_w + red, static_cast<int>(it.row()),
                         -it.value());
    }
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trips.begin(), trips.end());

  const Eigen::VectorXd rhs_w =
      a * sys.lift -
      assemble_boundary_pairing(mesh, dm, g2, quad.data_edge_degree);
  const Eigen::VectorXd load =
      assemble_load(mesh, dm, f, quad.data_tri_degree);

  sys.rhs.resize(n);
  sys.rhs.head(sys.n_w) = rhs_w;
  for (int r = 0; r < sys.n_u; ++r)
    sys.rhs(sys.n_w + r) =
        -load(dm.reduced_to_full[static_cast<std::size_t>(r)]);
  return sys;
}

}  // namespace wgbh
