#include "doctest.h"

#include <cmath>

#include "wgbh/mesh.hpp"
#include "wgbh/quadrature.hpp"
#include "wgbh/wg_space.hpp"

using namespace wgbh;

TEST_CASE("piecewise constant evaluation") {
  const Mesh m = generate_unit_square(2);
  WgFunction v = zero_wg_function(m, 0);
  v.interior(3) = 4.5;
  CHECK(eval(m, v, 3, m.centroid(3)) == 4.5);
  v.edge(2) = -1.25;
  CHECK(eval_edge(m, v, 2, 0.77) == -1.25);
  CHECK_THROWS_AS(eval(m, v, 99, Vec2(0, 0)), InvalidArgument);
}

TEST_CASE("linear interior expansion reproduces x") {
  const Mesh m = load_mesh("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  // Coefficients of v_0 = x in the centered scaled basis:
  // x = xc + h * xi  =>  {xc, h, 0}.
  WgFunction v = zero_wg_function(m, 1);
  v.interior(0) = m.centroid(0).x();
  v.interior(1) = m.h_per_tri[0];
  CHECK(eval(m, v, 0, Vec2(0.25, 0.25)) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("projection means on the reference triangle") {
  const Mesh m = load_mesh("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  const WgFunction q = project_Qh([](const Vec2& x) { return x.x(); }, m, 0);
  CHECK(q.interior(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  // Edge (0,0)-(1,0): mean of x is 1/2.
  int bottom = -1;
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto p = m.edge_points(e);
    if (p[0].y() == 0.0 && p[1].y() == 0.0) bottom = e;
  }
  REQUIRE(bottom >= 0);
  CHECK(q.edge(bottom) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("projection reproduces members of the space") {
  const Mesh m = generate_unit_square(3, 0.2, 2);
  for (int j = 0; j <= 1; ++j) {
    auto poly = [j](const Vec2& x) {
      return j == 0 ? 0.75 : 0.3 - 1.2 * x.x() + 0.7 * x.y();
    };
    const WgFunction q = project_Qh(poly, m, j);
    for (int t = 0; t < m.num_triangles(); ++t) {
      const Vec2 x = m.centroid(t) + Vec2(0.01, -0.02);
      CHECK(eval(m, q, t, x) == doctest::Approx(poly(x)).epsilon(1e-13));
    }
    for (int e = 0; e < m.num_edges(); ++e)
      CHECK(eval_edge(m, q, e, 0.3) ==
            doctest::Approx(poly(m.edge_point(e, 0.3))).epsilon(1e-13));
  }
}

TEST_CASE("L2 optimality of the local projections") {
  const Mesh m = generate_unit_square(2, 0.15, 4);
  auto f = [](const Vec2& x) { return std::sin(2.0 * x.x()) + x.y() * x.y(); };
  const QuadRule tri_rule = triangle_rule(10);
  const QuadRule edge_rule = segment_rule(14);
  for (int j = 0; j <= 1; ++j) {
    const WgFunction q = project_Qh(f, m, j, 10, 14);
    for (int t = 0; t < m.num_triangles(); ++t)
      for (int k = 0; k < interior_dim(j); ++k) {
        const double moment = integrate_tri(
            [&](const Vec2& x) {
              return (f(x) - eval(m, q, t, x)) * interior_basis(m, t, k, j, x);
            },
            m, t, tri_rule);
        CHECK(std::abs(moment) < 1e-12);
      }
    for (int e = 0; e < m.num_edges(); ++e)
      for (int k = 0; k < edge_dim(j); ++k) {
        const auto p = m.edge_points(e);
        const Vec2 d = p[1] - p[0];
        double moment = 0.0;
        for (int qp = 0; qp < edge_rule.size(); ++qp) {
          const double t01 = edge_rule.points(qp, 0);
          moment += edge_rule.weights(qp) * d.norm() *
                    (f(p[0] + t01 * d) - eval_edge(m, q, e, t01)) *
                    edge_basis(k, t01);
        }
        CHECK(std::abs(moment) < 1e-12);
      }
  }
}

TEST_CASE("mean values") {
  const Mesh m = generate_unit_square(8, 0.2, 6);
  WgFunction ones = zero_wg_function(m, 0);
  ones.interior.setOnes();
  CHECK(mean_value(ones, m) == doctest::Approx(1.0).epsilon(1e-13));

  const WgFunction qx = project_Qh([](const Vec2& x) { return x.x(); }, m, 1);
  CHECK(mean_value(qx, m) == doctest::Approx(0.5).epsilon(1e-12));

  const WgFunction qs = project_Qh(
      [](const Vec2& x) {
        return std::sin(2 * M_PI * x.x()) * std::sin(2 * M_PI * x.y());
      },
      m, 0);
  CHECK(std::abs(mean_value(qs, m)) < 1e-10);
}

TEST_CASE("dof map bijection and masks") {
  const Mesh m = generate_unit_square(3, 0.1, 8);
  for (int j = 0; j <= 1; ++j) {
    const DofMap dm = make_dof_map(m, j);
    CHECK(dm.n_total() ==
          m.num_triangles() * interior_dim(j) + m.num_edges() * edge_dim(j));
    CHECK(dm.n_reduced() ==
          dm.n_total() - m.num_boundary_edges() * edge_dim(j));
    std::vector<bool> hit(dm.n_total(), false);
    for (int r = 0; r < dm.n_reduced(); ++r) {
      const int full = dm.reduced_to_full[r];
      CHECK(dm.full_to_reduced[full] == r);
      CHECK(!hit[full]);
      hit[full] = true;
    }
    for (int e = 0; e < m.num_edges(); ++e)
      for (int k = 0; k < edge_dim(j); ++k)
        CHECK((dm.full_to_reduced[dm.edge_dof(e, k)] == -1) ==
              (m.boundary_edge[e] != 0));
  }
}

TEST_CASE("Qh approximation order in the discrete L2 norm") {
  // || v - Q_h v ||_{0,h} with the stabilization term, measured against
  // refinement; expect first order for j=0.
  auto v = [](const Vec2& x) {
    return std::sin(2 * M_PI * x.x()) * std::sin(2 * M_PI * x.y());
  };
  const QuadRule tri_rule = triangle_rule(10);
  const QuadRule edge_rule = segment_rule(12);

  std::vector<double> errs, hs;
  Mesh m = generate_unit_square(8, 0.2, 3);
  for (int level = 0; level < 3; ++level) {
    const WgFunction q = project_Qh(v, m, 0);
    double sum = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) {
      sum += integrate_tri(
          [&](const Vec2& x) {
            const double d = v(x) - eval(m, q, t, x);
            return d * d;
          },
          m, t, tri_rule);
      for (int k = 0; k < 3; ++k) {
        const int e = m.tri_edges[t][k].edge;
        const auto p = m.edge_points(e);
        const Vec2 d = p[1] - p[0];
        double edge_sum = 0.0;
        for (int qp = 0; qp < edge_rule.size(); ++qp) {
          const double t01 = edge_rule.points(qp, 0);
          const double diff =
              (v(p[0] + t01 * d) - eval(m, q, t, p[0] + t01 * d)) -
              (v(p[0] + t01 * d) - eval_edge(m, q, e, t01));
          edge_sum += edge_rule.weights(qp) * d.norm() * diff * diff;
        }
        sum += m.h_per_tri[t] * edge_sum;
      }
    }
    errs.push_back(std::sqrt(sum));
    hs.push_back(m.h);
    m = refine_uniform(m);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double order = std::log(errs[i - 1] / errs[i]) /
                         std::log(hs[i - 1] / hs[i]);
    CHECK(order >= 0.9);
  }
}
