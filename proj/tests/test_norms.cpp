#include "doctest.h"

#include <cmath>

#include "wgbh/checks.hpp"
#include "wgbh/norms.hpp"

using namespace wgbh;

namespace {

struct Setup {
  Mesh mesh;
  DofMap dm;
  RtSpace rt;
  WeakGradOperator op;

  explicit Setup(const Mesh& m, int j)
      : mesh(m), dm(make_dof_map(mesh, j)), rt(mesh, j), op(mesh, rt) {}
};

WgFunction constant_wg(const Mesh& mesh, int j, double value) {
  WgFunction v = zero_wg_function(mesh, j);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    v.interior(static_cast<long>(t) * interior_dim(j)) = value;
  for (int e = 0; e < mesh.num_edges(); ++e)
    v.edge(static_cast<long>(e) * edge_dim(j)) = value;
  return v;
}

}  // namespace

TEST_CASE("norms of the constant function") {
  Setup s(generate_unit_square(3, 0.2, 4), 0);
  const WgFunction ones = constant_wg(s.mesh, 0, 1.0);
  CHECK(norm_0h(s.mesh, ones) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(seminorm_1h(s.mesh, ones) < 1e-13);
  CHECK(weak_grad_norm(s.op, ones) < 1e-12);
}

TEST_CASE("weak gradient norm of Q_h(x) is one") {
  for (int j = 0; j <= 1; ++j) {
    Setup s(generate_unit_square(4, 0.2, 8), j);
    const WgFunction qx =
        project_Qh([](const Vec2& p) { return p.x(); }, s.mesh, j);
    CHECK(weak_grad_norm(s.op, qx) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("norm equivalence ratio is stable across refinements") {
  // | . |_{1,h} and || grad_w . || are equivalent; sample the ratio on
  // random functions and track the spread across levels.
  Mesh mesh = generate_unit_square(4, 0.2, 2);
  std::vector<double> lo_per_level, hi_per_level;
  for (int level = 0; level < 3; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    Setup s(mesh, 0);
    double lo = 1e30, hi = 0.0;
    for (unsigned seed = 0; seed < 12; ++seed) {
      const WgFunction v = random_wg_function(s.mesh, 0, 100 + seed);
      const double ratio = weak_grad_norm(s.op, v) / seminorm_1h(s.mesh, v);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    lo_per_level.push_back(lo);
    hi_per_level.push_back(hi);
  }
  for (std::size_t l = 1; l < lo_per_level.size(); ++l) {
    CHECK(lo_per_level[l] > 0.2 * lo_per_level[0]);
    CHECK(hi_per_level[l] < 5.0 * hi_per_level[0]);
  }
}

TEST_CASE("triple-bar norm: zero iff zero, witness identity") {
  for (int j = 0; j <= 1; ++j) {
    Setup s(generate_unit_square(4, 0.2, 6), j);
    const WgFunction zero = zero_wg_function(s.mesh, j);
    CHECK(triple_bar_norm(s.op, zero) == 0.0);

    const WgFunction psi = random_wg_function(s.mesh, j, 31, true);
    const double tb = triple_bar_norm(s.op, psi);
    CHECK(tb > 0.0);

    // The saturating test function recovers |||psi|||^2 exactly.
    const CheckResult witness =
        checks::infsup_witness_identity(s.mesh, j, 31);
    CHECK(witness.pass);

    // Arguments with boundary values are rejected.
    const WgFunction bad = random_wg_function(s.mesh, j, 32, false);
    CHECK_THROWS_AS(triple_bar_norm(s.op, bad), InvalidArgument);
  }
}

TEST_CASE("triple-bar dominates the weak gradient norm") {
  Mesh mesh = generate_unit_square(4, 0.2, 9);
  std::vector<double> worst_per_level;
  for (int level = 0; level < 3; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    Setup s(mesh, 0);
    double worst = 0.0;
    for (unsigned seed = 0; seed < 10; ++seed) {
      const WgFunction psi = random_wg_function(s.mesh, 0, 200 + seed, true);
      worst = std::max(worst,
                       weak_grad_norm(s.op, psi) / triple_bar_norm(s.op, psi));
    }
    worst_per_level.push_back(worst);
  }
  // The constant stays bounded (here: no blow-up across levels).
  for (double w : worst_per_level) CHECK(w < 2.0 * worst_per_level[0] + 1.0);
}

TEST_CASE("error report on the exact projection is all zeros") {
  Setup s(generate_unit_square(3, 0.15, 5), 0);
  auto f = [](const Vec2& x) { return std::sin(x.x()) + x.y(); };
  const WgFunction qf = project_Qh(f, s.mesh, 0);
  const ErrorReport rep = error_report(s.mesh, s.op, qf, f);
  CHECK(rep.grad_norm < 1e-12);
  CHECK(rep.l2_0 < 1e-13);
  CHECK(rep.edge < 1e-13);
  CHECK(rep.l2_0h < 1e-13);
  CHECK(rep.h1_semi < 1e-12);
}

TEST_CASE("report invariant: stabilization only adds") {
  Setup s(generate_unit_square(4, 0.25, 12), 1);
  const WgFunction v = random_wg_function(s.mesh, 1, 77);
  const ErrorReport rep =
      error_report(s.mesh, s.op, v, [](const Vec2&) { return 0.0; });
  CHECK(rep.l2_0h >= rep.l2_0);
}

TEST_CASE("fit_order basics") {
  {
    const double hs[] = {0.1, 0.05};
    const double errs[] = {4e-2, 1e-2};
    CHECK(fit_order(hs, errs).lsq == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    const double hs[] = {0.1, 0.05, 0.025};
    const double errs[] = {1e-1, 2.5e-2, 6.25e-3};
    const OrderFit fit = fit_order(hs, errs);
    CHECK(fit.lsq == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.pairwise_last == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    // Published convergence history for the bubble problem's L2 column.
    const double hs[] = {0.1, 0.05, 0.025, 0.0125, 0.00625};
    const double errs[] = {2.40e-04, 6.18e-05, 1.55e-05, 3.90e-06, 9.77e-07};
    CHECK(std::abs(fit_order(hs, errs).lsq - 1.9876) < 0.05);
  }
  {
    const double hs[] = {0.1};
    const double errs[] = {1.0};
    CHECK_THROWS_AS(fit_order(hs, errs), InvalidArgument);
  }
  {
    const double hs[] = {0.1, 0.05};
    const double errs[] = {1.0, 0.0};
    CHECK_THROWS_AS(fit_order(hs, errs), InvalidArgument);
  }
}

TEST_CASE("inverse inequality and Poincare track boundedly") {
  // Constants h |v|_{1,h} / ||v||_{0,h} (all of V_h) and
  // ||v||_{0,h} / ||grad_w v|| (zero-trace) stay bounded across levels.
  Mesh mesh = generate_unit_square(4, 0.2, 21);
  std::vector<double> inv_c, poi_c;
  for (int level = 0; level < 3; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    Setup s(mesh, 0);
    double worst_inv = 0.0, worst_poi = 0.0;
    for (unsigned seed = 0; seed < 10; ++seed) {
      const WgFunction v = random_wg_function(s.mesh, 0, 300 + seed);
      worst_inv = std::max(
          worst_inv, s.mesh.h * seminorm_1h(s.mesh, v) / norm_0h(s.mesh, v));
      const WgFunction v0 = random_wg_function(s.mesh, 0, 400 + seed, true);
      worst_poi =
          std::max(worst_poi, norm_0h(s.mesh, v0) / weak_grad_norm(s.op, v0));
    }
    inv_c.push_back(worst_inv);
    poi_c.push_back(worst_poi);
  }
  for (std::size_t l = 1; l < inv_c.size(); ++l) {
    CHECK(inv_c[l] < 1.5 * inv_c[0]);
    CHECK(poi_c[l] < 1.5 * poi_c[0] + 0.5);
  }
}
