#include "wgbh/wg_space.hpp"

#include <cmath>
#include <random>

namespace wgbh {

namespace {

void require_order(int j) {
  if (j != 0 && j != 1)
    throw InvalidArgument("weak space order j must be 0 or 1");
}

void require_shapes(const Mesh& mesh, const WgFunction& v) {
  if (v.interior.size() !=
          static_cast<long>(mesh.num_triangles()) * interior_dim(v.j) ||
      v.edge.size() != static_cast<long>(mesh.num_edges()) * edge_dim(v.j))
    throw InvalidArgument("WgFunction coefficient shapes do not match mesh");
}

}  // namespace

WgFunction zero_wg_function(const Mesh& mesh, int j) {
  require_order(j);
  WgFunction v;
  v.j = j;
  v.interior = Eigen::VectorXd::Zero(
      static_cast<long>(mesh.num_triangles()) * interior_dim(j));
  v.edge =
      Eigen::VectorXd::Zero(static_cast<long>(mesh.num_edges()) * edge_dim(j));
  return v;
}

WgFunction random_wg_function(const Mesh& mesh, int j, unsigned seed,
                              bool zero_trace) {
  std::mt19937_64 rng(seed);
  auto u = [&rng]() {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  };
  WgFunction v = zero_wg_function(mesh, j);
  for (long i = 0; i < v.interior.size(); ++i) v.interior(i) = u();
  for (long i = 0; i < v.edge.size(); ++i) v.edge(i) = u();
  if (zero_trace) {
    const int edim = edge_dim(j);
    for (int e = 0; e < mesh.num_edges(); ++e)
      if (mesh.boundary_edge[static_cast<std::size_t>(e)])
        v.edge.segment(static_cast<long>(e) * edim, edim).setZero();
  }
  return v;
}

WgFunction operator+(const WgFunction& a, const WgFunction& b) {
  if (a.j != b.j) throw InvalidArgument("WgFunction order mismatch");
  return {a.j, a.interior + b.interior, a.edge + b.edge};
}

WgFunction operator-(const WgFunction& a, const WgFunction& b) {
  if (a.j != b.j) throw InvalidArgument("WgFunction order mismatch");
  return {a.j, a.interior - b.interior, a.edge - b.edge};
}

WgFunction operator*(double s, const WgFunction& v) {
  return {v.j, s * v.interior, s * v.edge};
}

DofMap make_dof_map(const Mesh& mesh, int j) {
  require_order(j);
  DofMap dm;
  dm.j = j;
  dm.idim = interior_dim(j);
  dm.edim = edge_dim(j);
  dm.n_tri = mesh.num_triangles();
  dm.n_edge = mesh.num_edges();

  dm.full_to_reduced.assign(static_cast<std::size_t>(dm.n_total()), -1);
  dm.reduced_to_full.clear();
  for (int t = 0; t < dm.n_tri; ++t)
    for (int k = 0; k < dm.idim; ++k) {
      dm.full_to_reduced[static_cast<std::size_t>(dm.interior_dof(t, k))] =
          static_cast<int>(dm.reduced_to_full.size());
      dm.reduced_to_full.push_back(dm.interior_dof(t, k));
    }
  for (int e = 0; e < dm.n_edge; ++e) {
    if (mesh.boundary_edge[static_cast<std::size_t>(e)]) continue;
    for (int k = 0; k < dm.edim; ++k) {
      dm.full_to_reduced[static_cast<std::size_t>(dm.edge_dof(e, k))] =
          static_cast<int>(dm.reduced_to_full.size());
      dm.reduced_to_full.push_back(dm.edge_dof(e, k));
    }
  }

  // Centroid-centered monomials integrate to zero for k > 0, so the mean
  // functional touches only the constant slot of each triangle.
  dm.mean_functional = Eigen::VectorXd::Zero(dm.n_total());
  for (int t = 0; t < dm.n_tri; ++t)
    dm.mean_functional(dm.interior_dof(t, 0)) =
        mesh.area_per_tri[static_cast<std::size_t>(t)];
  return dm;
}

Eigen::VectorXd flatten(const DofMap& dm, const WgFunction& v) {
  Eigen::VectorXd x(dm.n_total());
  x.head(static_cast<long>(dm.n_tri) * dm.idim) = v.interior;
  x.tail(static_cast<long>(dm.n_edge) * dm.edim) = v.edge;
  return x;
}

WgFunction unflatten(const DofMap& dm, const Eigen::VectorXd& x) {
  WgFunction v;
  v.j = dm.j;
  v.interior = x.head(static_cast<long>(dm.n_tri) * dm.idim);
  v.edge = x.tail(static_cast<long>(dm.n_edge) * dm.edim);
  return v;
}

double interior_basis(const Mesh& mesh, int t, int k, int j, const Vec2& x) {
  if (k == 0) return 1.0;
  const Vec2 c = mesh.centroid(t);
  const double hk = mesh.h_per_tri[static_cast<std::size_t>(t)];
  if (k == 1) return (x.x() - c.x()) / hk;
  if (k == 2 && j >= 1) return (x.y() - c.y()) / hk;
  throw InvalidArgument("interior basis index out of range");
}

Vec2 interior_basis_grad(const Mesh& mesh, int t, int k, int j) {
  if (k == 0) return Vec2::Zero();
  const double hk = mesh.h_per_tri[static_cast<std::size_t>(t)];
  if (k == 1) return {1.0 / hk, 0.0};
  if (k == 2 && j >= 1) return {0.0, 1.0 / hk};
  throw InvalidArgument("interior basis index out of range");
}

double edge_basis(int k, double t01) {
  if (k == 0) return 1.0;
  if (k == 1) return 2.0 * t01 - 1.0;
  throw InvalidArgument("edge basis index out of range");
}

double eval(const Mesh& mesh, const WgFunction& v, int t, const Vec2& x) {
  require_shapes(mesh, v);
  if (t < 0 || t >= mesh.num_triangles())
    throw InvalidArgument("triangle index out of range");
  const int idim = interior_dim(v.j);
  double sum = 0.0;
  for (int k = 0; k < idim; ++k)
    sum += v.interior(static_cast<long>(t) * idim + k) *
           interior_basis(mesh, t, k, v.j, x);
  return sum;
}

double eval_edge(const Mesh& mesh, const WgFunction& v, int e, double t01) {
  require_shapes(mesh, v);
  if (e < 0 || e >= mesh.num_edges())
    throw InvalidArgument("edge index out of range");
  const int edim = edge_dim(v.j);
  double sum = 0.0;
  for (int k = 0; k < edim; ++k)
    sum += v.edge(static_cast<long>(e) * edim + k) * edge_basis(k, t01);
  return sum;
}

Eigen::MatrixXd interior_mass(const Mesh& mesh, int t, int j) {
  const int idim = interior_dim(j);
  const QuadRule rule = triangle_rule(std::max(2 * j, 1));
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(idim, idim);
  const auto tri = mesh.tri_points(t);
  const Vec2 d1 = tri[1] - tri[0];
  const Vec2 d2 = tri[2] - tri[0];
  const double jac = 2.0 * mesh.area_per_tri[static_cast<std::size_t>(t)];
  Eigen::VectorXd phi(idim);
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 x = tri[0] + rule.points(q, 0) * d1 + rule.points(q, 1) * d2;
    for (int k = 0; k < idim; ++k) phi(k) = interior_basis(mesh, t, k, j, x);
    const Eigen::MatrixXd outer = phi * phi.transpose();
    mass += (rule.weights(q) * jac) * outer;
  }
  return mass;
}

Eigen::MatrixXd edge_mass(const Mesh& mesh, int e, int j) {
  const int edim = edge_dim(j);
  const double len = mesh.edge_length(e);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(edim, edim);
  mass(0, 0) = len;
  if (j >= 1) mass(1, 1) = len / 3.0;
  return mass;
}

WgFunction project_Qh(const ScalarField& v, const Mesh& mesh, int j,
                      int quad_tri_degree, int quad_edge_degree) {
  require_order(j);
  WgFunction out = zero_wg_function(mesh, j);
  const int idim = interior_dim(j);
  const int edim = edge_dim(j);
  const QuadRule tri_rule = triangle_rule(quad_tri_degree);
  const QuadRule edge_rule = segment_rule(quad_edge_degree);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(idim);
    const auto tri = mesh.tri_points(t);
    const Vec2 d1 = tri[1] - tri[0];
    const Vec2 d2 = tri[2] - tri[0];
    const double jac = 2.0 * mesh.area_per_tri[static_cast<std::size_t>(t)];
    for (int q = 0; q < tri_rule.size(); ++q) {
      const Vec2 x =
          tri[0] + tri_rule.points(q, 0) * d1 + tri_rule.points(q, 1) * d2;
      const double fv = v(x) * tri_rule.weights(q) * jac;
      for (int k = 0; k < idim; ++k)
        rhs(k) += fv * interior_basis(mesh, t, k, j, x);
    }
    out.interior.segment(static_cast<long>(t) * idim, idim) =
        interior_mass(mesh, t, j).ldlt().solve(rhs);
  }

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto p = mesh.edge_points(e);
    const Vec2 d = p[1] - p[0];
    const double len = d.norm();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(edim);
    for (int q = 0; q < edge_rule.size(); ++q) {
      const double t01 = edge_rule.points(q, 0);
      const double fv = v(p[0] + t01 * d) * edge_rule.weights(q) * len;
      for (int k = 0; k < edim; ++k) rhs(k) += fv * edge_basis(k, t01);
    }
    out.edge(static_cast<long>(e) * edim) = rhs(0) / len;
    if (j >= 1) out.edge(static_cast<long>(e) * edim + 1) = 3.0 * rhs(1) / len;
  }
  return out;
}

double mean_value(const WgFunction& v, const Mesh& mesh) {
  require_shapes(mesh, v);
  const int idim = interior_dim(v.j);
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    sum += mesh.area_per_tri[static_cast<std::size_t>(t)] *
           v.interior(static_cast<long>(t) * idim);
  return sum;
}

}  // namespace wgbh
