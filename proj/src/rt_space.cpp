#include "wgbh/rt_space.hpp"

#include <cmath>

#include "wgbh/wg_space.hpp"

namespace wgbh {

namespace {

/// Norm of the shifted Legendre basis: gamma_p = int_0^1 Pt_p^2 dt.
constexpr double legendre_gamma(int p) { return p == 0 ? 1.0 : 1.0 / 3.0; }

/// Monomial generators of RT_j in centroid-centered coordinates scaled by
/// h_K. For j=0: {(1,0), (0,1), (xi,eta)}; for j=1 the six (P_1)^2 monomials
/// followed by the two quadratic Raviart-Thomas tails.
Vec2 rt_generator(int j, const Vec2& c, double hk, int m, const Vec2& x) {
  const double xi = (x.x() - c.x()) / hk;
  const double eta = (x.y() - c.y()) / hk;
  if (j == 0) {
    switch (m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {xi, eta};
    }
  } else {
    switch (m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {xi, 0.0};
      case 3: return {0.0, xi};
      case 4: return {eta, 0.0};
      case 5: return {0.0, eta};
      case 6: return {xi * xi, xi * eta};
      case 7: return {xi * eta, eta * eta};
    }
  }
  throw InvalidArgument("generator index out of range");
}

}  // namespace

RtSpace::RtSpace(const Mesh& mesh, int j) : mesh_(&mesh), j_(j), r_(rt_dim(j)) {
  if (j != 0 && j != 1)
    throw InvalidArgument("RT space order j must be 0 or 1");
  const int nt = mesh.num_triangles();
  local_.resize(static_cast<std::size_t>(nt));

  const QuadRule edge_rule = segment_rule(2 * j + 2);
  const QuadRule tri_rule = triangle_rule(2 * j + 2);
  const int idim = interior_dim(j);

  for (int t = 0; t < nt; ++t) {
    RtLocal& loc = local_[static_cast<std::size_t>(t)];
    const double area = mesh.area_per_tri[static_cast<std::size_t>(t)];
    const double hk = mesh.h_per_tri[static_cast<std::size_t>(t)];
    const Vec2 c = mesh.centroid(t);
    if (!(area > 0.0) || !(hk > 0.0))
      throw TopologyError("degenerate triangle " + std::to_string(t));

    if (j_ == 0) {
      // Closed form on the physical triangle: the dual of the mean-flux DOFs
      // is sigma_k |e_k| (x - p_k) / (2|K|), p_k the vertex opposite edge k.
      loc.coeff.resize(3, 3);
      for (int k = 0; k < 3; ++k) {
        const auto& te = mesh.tri_edges[static_cast<std::size_t>(t)][k];
        const Vec2 opp = mesh.vertices[static_cast<std::size_t>(
            mesh.triangles[static_cast<std::size_t>(t)][k])];
        const double s = te.sign * mesh.edge_length(te.edge) / (2.0 * area);
        loc.coeff(0, k) = s * (c.x() - opp.x());
        loc.coeff(1, k) = s * (c.y() - opp.y());
        loc.coeff(2, k) = s * hk;
      }
    } else {
      // Generalized Vandermonde: invert the DOF-by-generator matrix.
      Eigen::MatrixXd dof = Eigen::MatrixXd::Zero(r_, r_);
      for (int k = 0; k < 3; ++k) {
        const auto& te = mesh.tri_edges[static_cast<std::size_t>(t)][k];
        const auto ep = mesh.edge_points(te.edge);
        const Vec2 n = mesh.edge_normal(te.edge);
        const Vec2 d = ep[1] - ep[0];
        for (int q = 0; q < edge_rule.size(); ++q) {
          const double t01 = edge_rule.points(q, 0);
          const Vec2 x = ep[0] + t01 * d;
          for (int m = 0; m < r_; ++m) {
            const double flux = rt_generator(j_, c, hk, m, x).dot(n);
            for (int p = 0; p <= j_; ++p)
              dof(edge_dof(k, p), m) +=
                  edge_rule.weights(q) * flux * edge_basis(p, t01);
          }
        }
      }
      const auto tri = mesh.tri_points(t);
      const Vec2 d1 = tri[1] - tri[0];
      const Vec2 d2 = tri[2] - tri[0];
      for (int q = 0; q < tri_rule.size(); ++q) {
        const Vec2 x =
            tri[0] + tri_rule.points(q, 0) * d1 + tri_rule.points(q, 1) * d2;
        const double wq = tri_rule.weights(q) * 2.0;  // jac / |K| = 2
        for (int m = 0; m < r_; ++m) {
          const Vec2 g = rt_generator(j_, c, hk, m, x);
          dof(interior_dof(0), m) += wq * g.x();
          dof(interior_dof(1), m) += wq * g.y();
        }
      }
      loc.coeff = Eigen::PartialPivLU<Eigen::MatrixXd>(dof).inverse();
    }

    // Mass matrix of the dual basis via the generator mass matrix.
    {
      const auto tri = mesh.tri_points(t);
      const Vec2 d1 = tri[1] - tri[0];
      const Vec2 d2 = tri[2] - tri[0];
      const double jac = 2.0 * area;
      Eigen::MatrixXd mgen = Eigen::MatrixXd::Zero(r_, r_);
      Eigen::MatrixXd gvals(2, r_);
      for (int q = 0; q < tri_rule.size(); ++q) {
        const Vec2 x =
            tri[0] + tri_rule.points(q, 0) * d1 + tri_rule.points(q, 1) * d2;
        for (int m = 0; m < r_; ++m)
          gvals.col(m) = rt_generator(j_, c, hk, m, x);
        mgen += (tri_rule.weights(q) * jac) * gvals.transpose() * gvals;
      }
      loc.mass = loc.coeff.transpose() * mgen * loc.coeff;
      loc.mass = 0.5 * (loc.mass + loc.mass.transpose().eval());
    }

    // Divergence of generators in the interior monomial basis, then map.
    Eigen::MatrixXd div_gen = Eigen::MatrixXd::Zero(idim, r_);
    if (j_ == 0) {
      div_gen(0, 2) = 2.0 / hk;
    } else {
      div_gen(0, 2) = 1.0 / hk;  // (xi, 0)
      div_gen(0, 5) = 1.0 / hk;  // (0, eta)
      div_gen(1, 6) = 3.0 / hk;  // (xi^2, xi eta)
      div_gen(2, 7) = 3.0 / hk;  // (xi eta, eta^2)
    }
    loc.div = div_gen * loc.coeff;
  }
}

Vec2 RtSpace::eval_generator(int t, int m, const Vec2& x) const {
  return rt_generator(j_, mesh_->centroid(t),
                      mesh_->h_per_tri[static_cast<std::size_t>(t)], m, x);
}

Vec2 RtSpace::eval_basis(int t, int i, const Vec2& x) const {
  const RtLocal& loc = local_[static_cast<std::size_t>(t)];
  Vec2 sum = Vec2::Zero();
  for (int m = 0; m < loc.coeff.rows(); ++m)
    sum += loc.coeff(m, i) * eval_generator(t, m, x);
  return sum;
}

Vec2 RtSpace::eval(const RtField& q, int t, const Vec2& x) const {
  Vec2 sum = Vec2::Zero();
  for (int i = 0; i < r_; ++i)
    sum += q.coeffs(static_cast<long>(t) * r_ + i) * eval_basis(t, i, x);
  return sum;
}

RtField RtSpace::zero_field() const {
  RtField q;
  q.j = j_;
  q.coeffs =
      Eigen::VectorXd::Zero(static_cast<long>(mesh_->num_triangles()) * r_);
  return q;
}

double RtSpace::l2_norm(const RtField& q) const {
  double sum = 0.0;
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const auto c = q.coeffs.segment(static_cast<long>(t) * r_, r_);
    sum += c.dot(local_[static_cast<std::size_t>(t)].mass * c);
  }
  return std::sqrt(std::max(sum, 0.0));
}

Eigen::VectorXd RtSpace::divergence(const RtField& q, int t) const {
  return local_[static_cast<std::size_t>(t)].div *
         q.coeffs.segment(static_cast<long>(t) * r_, r_);
}

Eigen::VectorXd RtSpace::normal_trace(const RtField& q, int t, int e) const {
  for (int k = 0; k < 3; ++k) {
    const auto& te = mesh_->tri_edges[static_cast<std::size_t>(t)][k];
    if (te.edge != e) continue;
    Eigen::VectorXd coeffs(j_ + 1);
    for (int p = 0; p <= j_; ++p)
      coeffs(p) = q.coeffs(static_cast<long>(t) * r_ + edge_dof(k, p)) /
                  legendre_gamma(p);
    return coeffs;
  }
  throw InvalidArgument("triangle is not adjacent to edge");
}

double RtSpace::normal_jump_norm(const RtField& q, int e) const {
  const auto& adj = mesh_->edge_tris[static_cast<std::size_t>(e)];
  auto side_sign = [&](int t) {
    for (int k = 0; k < 3; ++k) {
      const auto& te = mesh_->tri_edges[static_cast<std::size_t>(t)][k];
      if (te.edge == e) return static_cast<double>(te.sign);
    }
    throw InvalidArgument("triangle is not adjacent to edge");
  };
  Eigen::VectorXd jump = side_sign(adj[0]) * normal_trace(q, adj[0], e);
  if (adj[1] != -1) jump += side_sign(adj[1]) * normal_trace(q, adj[1], e);
  double sum = 0.0;
  const double len = mesh_->edge_length(e);
  for (int p = 0; p <= j_; ++p)
    sum += jump(p) * jump(p) * legendre_gamma(p) * len;
  return std::sqrt(sum);
}

RtField project_Ph(const RtSpace& rt, const VectorField& q,
                   int quad_tri_degree) {
  const Mesh& mesh = rt.mesh();
  const QuadRule rule = triangle_rule(quad_tri_degree);
  const int r = rt.local_dim();
  RtField out = rt.zero_field();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto tri = mesh.tri_points(t);
    const Vec2 d1 = tri[1] - tri[0];
    const Vec2 d2 = tri[2] - tri[0];
    const double jac = 2.0 * mesh.area_per_tri[static_cast<std::size_t>(t)];
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r);
    for (int qp = 0; qp < rule.size(); ++qp) {
      const Vec2 x = tri[0] + rule.points(qp, 0) * d1 + rule.points(qp, 1) * d2;
      const Vec2 val = q(x);
      const double wq = rule.weights(qp) * jac;
      for (int i = 0; i < r; ++i)
        rhs(i) += wq * val.dot(rt.eval_basis(t, i, x));
    }
    out.coeffs.segment(static_cast<long>(t) * r, r) =
        rt.local(t).mass.ldlt().solve(rhs);
  }
  return out;
}

RtField interpolate_Pih(const RtSpace& rt, const VectorField& q,
                        int quad_edge_degree, int quad_tri_degree) {
  const Mesh& mesh = rt.mesh();
  const int j = rt.order();
  const int r = rt.local_dim();
  const QuadRule edge_rule = segment_rule(quad_edge_degree);
  const QuadRule tri_rule = triangle_rule(quad_tri_degree);

  // One set of moments per edge, shared by both adjacent triangles; this is
  // what makes the interpolant H(div)-conforming.
  Eigen::MatrixXd edge_moments = Eigen::MatrixXd::Zero(j + 1, mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto p = mesh.edge_points(e);
    const Vec2 d = p[1] - p[0];
    const Vec2 n = mesh.edge_normal(e);
    for (int qp = 0; qp < edge_rule.size(); ++qp) {
      const double t01 = edge_rule.points(qp, 0);
      const double flux = q(p[0] + t01 * d).dot(n);
      // The rule integrates in the unit parameter, so this accumulates the
      // length-normalized moment, which is directly the dual-basis
      // coefficient.
      for (int pm = 0; pm <= j; ++pm)
        edge_moments(pm, e) +=
            edge_rule.weights(qp) * flux * edge_basis(pm, t01);
    }
  }

  RtField out = rt.zero_field();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.tri_edges[static_cast<std::size_t>(t)][k].edge;
      for (int pm = 0; pm <= j; ++pm)
        out.coeffs(static_cast<long>(t) * r + rt.edge_dof(k, pm)) =
            edge_moments(pm, e);
    }
    if (j >= 1) {
      const auto tri = mesh.tri_points(t);
      const Vec2 d1 = tri[1] - tri[0];
      const Vec2 d2 = tri[2] - tri[0];
      Vec2 mom = Vec2::Zero();
      for (int qp = 0; qp < tri_rule.size(); ++qp) {
        const Vec2 x =
            tri[0] + tri_rule.points(qp, 0) * d1 + tri_rule.points(qp, 1) * d2;
        mom += (tri_rule.weights(qp) * 2.0) * q(x);  // jac / |K| = 2
      }
      out.coeffs(static_cast<long>(t) * r + rt.interior_dof(0)) = mom.x();
      out.coeffs(static_cast<long>(t) * r + rt.interior_dof(1)) = mom.y();
    }
  }
  return out;
}

}  // namespace wgbh
