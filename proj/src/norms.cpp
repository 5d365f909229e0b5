#include "wgbh/norms.hpp"

#include <cmath>

namespace wgbh {

namespace {

constexpr double legendre_gamma(int p) { return p == 0 ? 1.0 : 1.0 / 3.0; }

/// sum over dK of int_e (v_0 - v_b)^2 ds, exact.
double boundary_penalty(const Mesh& mesh, const WgFunction& v, int t) {
  const int j = v.j;
  const int edim = edge_dim(j);
  const QuadRule rule = segment_rule(2 * j + 2);
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int e = mesh.tri_edges[static_cast<std::size_t>(t)][k].edge;
    const auto ep = mesh.edge_points(e);
    const Vec2 d = ep[1] - ep[0];
    const double len = d.norm();
    for (int q = 0; q < rule.size(); ++q) {
      const double t01 = rule.points(q, 0);
      double diff = eval(mesh, v, t, ep[0] + t01 * d);
      for (int p = 0; p < edim; ++p)
        diff -= v.edge(static_cast<long>(e) * edim + p) * edge_basis(p, t01);
      sum += rule.weights(q) * len * diff * diff;
    }
  }
  return sum;
}

double interior_l2_sq(const Mesh& mesh, const WgFunction& v, int t) {
  const int idim = interior_dim(v.j);
  const auto c = v.interior.segment(static_cast<long>(t) * idim, idim);
  return c.dot(interior_mass(mesh, t, v.j) * c);
}

void require_zero_trace(const Mesh& mesh, const WgFunction& v) {
  const int edim = edge_dim(v.j);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.boundary_edge[static_cast<std::size_t>(e)]) continue;
    for (int p = 0; p < edim; ++p)
      if (v.edge(static_cast<long>(e) * edim + p) != 0.0)
        throw InvalidArgument(
            "argument must vanish on boundary edges (not in the zero-trace "
            "subspace)");
  }
}

}  // namespace

double edge_h(const Mesh& mesh, int e) {
  const auto& adj = mesh.edge_tris[static_cast<std::size_t>(e)];
  const double h0 = mesh.h_per_tri[static_cast<std::size_t>(adj[0])];
  if (adj[1] == -1) return h0;
  return 0.5 * (h0 + mesh.h_per_tri[static_cast<std::size_t>(adj[1])]);
}

double norm_0h(const Mesh& mesh, const WgFunction& v) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    sum += interior_l2_sq(mesh, v, t) +
           mesh.h_per_tri[static_cast<std::size_t>(t)] *
               boundary_penalty(mesh, v, t);
  return std::sqrt(std::max(sum, 0.0));
}

double seminorm_1h(const Mesh& mesh, const WgFunction& v) {
  const int idim = interior_dim(v.j);
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    Vec2 grad = Vec2::Zero();
    for (int k = 1; k < idim; ++k)
      grad += v.interior(static_cast<long>(t) * idim + k) *
              interior_basis_grad(mesh, t, k, v.j);
    sum += grad.squaredNorm() * mesh.area_per_tri[static_cast<std::size_t>(t)];
    sum += boundary_penalty(mesh, v, t) /
           mesh.h_per_tri[static_cast<std::size_t>(t)];
  }
  return std::sqrt(std::max(sum, 0.0));
}

double weak_grad_norm(const WeakGradOperator& op, const WgFunction& v) {
  return op.rt().l2_norm(op.apply(v));
}

double edge_norm(const Mesh& mesh, const WgFunction& v) {
  const int edim = edge_dim(v.j);
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double hk = mesh.h_per_tri[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.tri_edges[static_cast<std::size_t>(t)][k].edge;
      const double len = mesh.edge_length(e);
      double l2 = 0.0;
      for (int p = 0; p < edim; ++p) {
        const double c = v.edge(static_cast<long>(e) * edim + p);
        l2 += c * c * legendre_gamma(p) * len;
      }
      sum += hk * l2;
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

double triple_bar_norm(const WeakGradOperator& op, const WgFunction& v) {
  const Mesh& mesh = op.mesh();
  require_zero_trace(mesh, v);
  const RtSpace& rt = op.rt();
  const RtField grad = op.apply(v);

  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd div = rt.divergence(grad, t);
    sum += div.dot(interior_mass(mesh, t, v.j) * div);
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const double jump = rt.normal_jump_norm(grad, e);
    sum += jump * jump / edge_h(mesh, e);
  }
  return std::sqrt(std::max(sum, 0.0));
}

WgFunction inf_sup_witness(const WeakGradOperator& op, const WgFunction& psi) {
  const Mesh& mesh = op.mesh();
  require_zero_trace(mesh, psi);
  const RtSpace& rt = op.rt();
  const RtField grad = op.apply(psi);
  const int j = psi.j;
  const int idim = interior_dim(j);
  const int edim = edge_dim(j);

  WgFunction v = zero_wg_function(mesh, j);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    v.interior.segment(static_cast<long>(t) * idim, idim) =
        -rt.divergence(grad, t);

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& adj = mesh.edge_tris[static_cast<std::size_t>(e)];
    auto side_sign = [&](int t) {
      for (int k = 0; k < 3; ++k)
        if (mesh.tri_edges[static_cast<std::size_t>(t)][k].edge == e)
          return static_cast<double>(
              mesh.tri_edges[static_cast<std::size_t>(t)][k].sign);
      throw InvalidArgument("triangle is not adjacent to edge");
    };
    Eigen::VectorXd jump = side_sign(adj[0]) * rt.normal_trace(grad, adj[0], e);
    if (adj[1] != -1)
      jump += side_sign(adj[1]) * rt.normal_trace(grad, adj[1], e);
    v.edge.segment(static_cast<long>(e) * edim, edim) = jump / edge_h(mesh, e);
  }
  return v;
}

ErrorReport error_report(const Mesh& mesh, const WeakGradOperator& op,
                         const WgFunction& vh, const ScalarField& exact,
                         int quad_tri_degree, int quad_edge_degree) {
  const WgFunction e =
      project_Qh(exact, mesh, vh.j, quad_tri_degree, quad_edge_degree) - vh;
  ErrorReport rep;
  rep.grad_norm = weak_grad_norm(op, e);
  rep.l2_0 = 0.0;
  double interior_sq = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    interior_sq += interior_l2_sq(mesh, e, t);
  rep.l2_0 = std::sqrt(std::max(interior_sq, 0.0));
  rep.edge = edge_norm(mesh, e);
  rep.l2_0h = norm_0h(mesh, e);
  rep.h1_semi = seminorm_1h(mesh, e);

  bool zero_trace = true;
  const int edim = edge_dim(e.j);
  for (int eg = 0; eg < mesh.num_edges() && zero_trace; ++eg) {
    if (!mesh.boundary_edge[static_cast<std::size_t>(eg)]) continue;
    for (int p = 0; p < edim; ++p)
      if (std::abs(e.edge(static_cast<long>(eg) * edim + p)) > 1e-13)
        zero_trace = false;
  }
  if (zero_trace) {
    WgFunction clipped = e;
    for (int eg = 0; eg < mesh.num_edges(); ++eg) {
      if (!mesh.boundary_edge[static_cast<std::size_t>(eg)]) continue;
      clipped.edge.segment(static_cast<long>(eg) * edim, edim).setZero();
    }
    rep.triple_bar = triple_bar_norm(op, clipped);
  }
  return rep;
}

OrderFit fit_order(std::span<const double> hs, std::span<const double> errs) {
  if (hs.size() != errs.size() || hs.size() < 2)
    throw InvalidArgument("fit_order needs at least two levels");
  for (const double e : errs)
    if (!(e > 0.0)) throw InvalidArgument("fit_order needs positive errors");

  const auto n = static_cast<double>(hs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double x = std::log(hs[i]);
    const double y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  OrderFit fit;
  fit.lsq = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 1; i < hs.size(); ++i)
    fit.pairwise.push_back(std::log(errs[i - 1] / errs[i]) /
                           std::log(hs[i - 1] / hs[i]));
  fit.pairwise_last = fit.pairwise.back();
  return fit;
}

}  // namespace wgbh
