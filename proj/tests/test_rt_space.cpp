#include "doctest.h"

#include <cmath>

#include "wgbh/mesh.hpp"
#include "wgbh/quadrature.hpp"
#include "wgbh/rt_space.hpp"
#include "wgbh/wg_space.hpp"

using namespace wgbh;

namespace {

/// DOF functionals evaluated by quadrature, independent of the construction
/// path inside RtSpace.
double edge_moment(const Mesh& m, const RtSpace& rt, int t, int i, int e,
                   int p) {
  const QuadRule rule = segment_rule(8);
  const auto ep = m.edge_points(e);
  const Vec2 d = ep[1] - ep[0];
  const Vec2 n = m.edge_normal(e);
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const double t01 = rule.points(q, 0);
    sum += rule.weights(q) * rt.eval_basis(t, i, ep[0] + t01 * d).dot(n) *
           edge_basis(p, t01);
  }
  return sum;
}

Vec2 interior_moment(const Mesh& m, const RtSpace& rt, int t, int i) {
  const QuadRule rule = triangle_rule(6);
  const auto tri = m.tri_points(t);
  const Vec2 d1 = tri[1] - tri[0];
  const Vec2 d2 = tri[2] - tri[0];
  Vec2 sum = Vec2::Zero();
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 x = tri[0] + rule.points(q, 0) * d1 + rule.points(q, 1) * d2;
    sum += (rule.weights(q) * 2.0) * rt.eval_basis(t, i, x);
  }
  return sum;
}

}  // namespace

TEST_CASE("dual-basis property of the local RT bases") {
  const Mesh m = generate_unit_square(3, 0.2, 17);
  for (int j = 0; j <= 1; ++j) {
    const RtSpace rt(m, j);
    for (int t : {0, 5, m.num_triangles() - 1}) {
      for (int i = 0; i < rt.local_dim(); ++i) {
        for (int k = 0; k < 3; ++k) {
          const int e = m.tri_edges[t][k].edge;
          for (int p = 0; p <= j; ++p) {
            const double want = rt.edge_dof(k, p) == i ? 1.0 : 0.0;
            CHECK(edge_moment(m, rt, t, i, e, p) ==
                  doctest::Approx(want).epsilon(1e-12));
          }
        }
        if (j == 1) {
          const Vec2 mom = interior_moment(m, rt, t, i);
          CHECK(mom.x() ==
                doctest::Approx(i == rt.interior_dof(0) ? 1 : 0).epsilon(1e-12));
          CHECK(mom.y() ==
                doctest::Approx(i == rt.interior_dof(1) ? 1 : 0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("RT0 unit-flux basis has constant divergence 1/|K|") {
  const Mesh m = generate_unit_square(2, 0.25, 4);
  const RtSpace rt(m, 0);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double inv_area = 1.0 / m.area_per_tri[t];
    for (int k = 0; k < 3; ++k) {
      // Production basis is sigma |e| times the unit-outward-flux basis.
      const auto& te = m.tri_edges[t][k];
      const double scale = te.sign * m.edge_length(te.edge);
      const Eigen::VectorXd div = rt.local(t).div.col(k);
      CHECK(div(0) / scale == doctest::Approx(inv_area).epsilon(1e-12));
    }
  }
}

TEST_CASE("constants lie in RT0; divergence table matches quadrature") {
  const Mesh m = generate_unit_square(2, 0.2, 12);
  const RtSpace rt(m, 0);
  const RtField c = project_Ph(rt, [](const Vec2&) { return Vec2(1.0, 2.0); });
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (const Vec2& x : {m.centroid(t), m.tri_points(t)[0]}) {
      const Vec2 v = rt.eval(c, t, x);
      CHECK(v.x() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(v.y() == doctest::Approx(2.0).epsilon(1e-13));
    }
    CHECK(std::abs(rt.divergence(c, t)(0)) < 1e-12);
  }
}

TEST_CASE("RT1 dimension and SPD mass matrix") {
  const Mesh m = load_mesh("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  const RtSpace rt(m, 1);
  CHECK(rt.local_dim() == 8);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rt.local(0).mass);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("projection reproduces gradients of polynomials") {
  const Mesh m = generate_unit_square(3, 0.15, 2);
  for (int j = 0; j <= 1; ++j) {
    const RtSpace rt(m, j);
    const RtField g =
        project_Ph(rt, [](const Vec2&) { return Vec2(1.0, 2.0); });
    for (int t = 0; t < m.num_triangles(); ++t) {
      const Vec2 v = rt.eval(g, t, m.centroid(t) + Vec2(0.01, 0.01));
      CHECK(v.x() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(v.y() == doctest::Approx(2.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("projection converges at first order for j=0") {
  auto q = [](const Vec2& x) {
    return Vec2(std::sin(2 * M_PI * x.x()), 0.0);
  };
  std::vector<double> errs, hs;
  Mesh m = generate_unit_square(4, 0.2, 7);
  for (int level = 0; level < 3; ++level) {
    const RtSpace rt(m, 0);
    const RtField p = project_Ph(rt, q);
    const QuadRule rule = triangle_rule(10);
    double sum = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t)
      sum += integrate_tri(
          [&](const Vec2& x) {
            return (q(x) - rt.eval(p, t, x)).squaredNorm();
          },
          m, t, rule);
    errs.push_back(std::sqrt(sum));
    hs.push_back(m.h);
    m = refine_uniform(m);
  }
  for (std::size_t i = 1; i < errs.size(); ++i)
    CHECK(std::log(errs[i - 1] / errs[i]) / std::log(hs[i - 1] / hs[i]) >= 0.9);
}

TEST_CASE("interpolation: constants, commuting diagram, normal continuity") {
  const Mesh m = generate_unit_square(3, 0.2, 5);
  for (int j = 0; j <= 1; ++j) {
    const RtSpace rt(m, j);

    const RtField c = interpolate_Pih(rt, [](const Vec2&) { return Vec2(1, 0); });
    for (int t = 0; t < m.num_triangles(); ++t) {
      const Vec2 v = rt.eval(c, t, m.centroid(t) + Vec2(0.02, -0.01));
      CHECK(v.x() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(v.y()) < 1e-12);
    }

    // Q_0(div q) = div Pi_h q for q = (x, y): both sides equal the constant 2.
    const RtField lin = interpolate_Pih(rt, [](const Vec2& x) { return x; });
    for (int t = 0; t < m.num_triangles(); ++t) {
      const Eigen::VectorXd div = rt.divergence(lin, t);
      CHECK(div(0) == doctest::Approx(2.0).epsilon(1e-12));
      for (int k = 1; k < interior_dim(j); ++k) CHECK(std::abs(div(k)) < 1e-11);
    }

    // Commuting diagram for a full polynomial of degree j+1.
    auto poly = [j](const Vec2& x) -> Vec2 {
      if (j == 0) return {0.5 - x.x() + 2 * x.y(), 1.0 + 3 * x.x() - x.y()};
      return {x.x() * x.x() - x.y() + 0.3 * x.x() * x.y(),
              2 * x.y() * x.y() + 0.5 * x.x() * x.x() - 1.0};
    };
    auto div_poly = [j](const Vec2& x) {
      return j == 0 ? -2.0 : 2 * x.x() + 0.3 * x.y() + 4 * x.y();
    };
    const RtField ip = interpolate_Pih(rt, poly);
    const WgFunction q0 = project_Qh(div_poly, m, j);
    for (int t = 0; t < m.num_triangles(); ++t) {
      const Eigen::VectorXd div = rt.divergence(ip, t);
      const Eigen::VectorXd want =
          q0.interior.segment(t * interior_dim(j), interior_dim(j));
      CHECK((div - want).norm() < 1e-12 * std::max(1.0, want.norm()));
    }

    // Normal continuity for a smooth analytic field.
    auto smooth = [](const Vec2& x) -> Vec2 {
      const double c = 2 * M_PI;
      return {c * std::cos(c * x.x()) * std::sin(c * x.y()),
              c * std::sin(c * x.x()) * std::cos(c * x.y())};
    };
    const RtField s = interpolate_Pih(rt, smooth);
    for (int e = 0; e < m.num_edges(); ++e) {
      if (m.boundary_edge[e]) continue;
      CHECK(rt.normal_jump_norm(s, e) < 1e-12);
    }
  }
}

TEST_CASE("interpolation approximation rates") {
  auto smooth = [](const Vec2& x) -> Vec2 {
    const double c = 2 * M_PI;
    return {c * std::cos(c * x.x()) * std::sin(c * x.y()),
            c * std::sin(c * x.x()) * std::cos(c * x.y())};
  };
  for (int j = 0; j <= 1; ++j) {
    std::vector<double> errs, hs;
    Mesh m = generate_unit_square(4, 0.2, 9);
    for (int level = 0; level < 3; ++level) {
      const RtSpace rt(m, j);
      const RtField p = interpolate_Pih(rt, smooth);
      const QuadRule rule = triangle_rule(10);
      double sum = 0.0;
      for (int t = 0; t < m.num_triangles(); ++t)
        sum += integrate_tri(
            [&](const Vec2& x) {
              return (smooth(x) - rt.eval(p, t, x)).squaredNorm();
            },
            m, t, rule);
      errs.push_back(std::sqrt(sum));
      hs.push_back(m.h);
      m = refine_uniform(m);
    }
    const double order = std::log(errs[1] / errs[2]) / std::log(hs[1] / hs[2]);
    CHECK(order >= (j + 1) - 0.1);
  }
}

TEST_CASE("RT0 closed form agrees with the generic construction") {
  // The generic path used for j=1 must reproduce the j=0 closed form when
  // fed the same DOFs; check via basis values at sample points.
  const Mesh m = generate_unit_square(2, 0.25, 21);
  const RtSpace rt(m, 0);
  const QuadRule edge_rule = segment_rule(4);
  for (int t = 0; t < m.num_triangles(); ++t) {
    // Verify duality numerically (this is what the generic path enforces).
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        CHECK(edge_moment(m, rt, t, i, m.tri_edges[t][k].edge, 0) ==
              doctest::Approx(i == k ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("degenerate triangle is rejected") {
  Mesh m = generate_unit_square(1);
  m.vertices[3] = m.vertices[0];  // collapse
  CHECK_THROWS(validate_mesh(m));
}
