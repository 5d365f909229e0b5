#include "doctest.h"

#include <cmath>
#include <random>

#include "wgbh/norms.hpp"
#include "wgbh/problems.hpp"
#include "wgbh/solver.hpp"

using namespace wgbh;

namespace {

struct Setup {
  Mesh mesh;
  DofMap dm;
  RtSpace rt;
  WeakGradOperator op;

  Setup(int n, double jitter, unsigned seed, int j)
      : mesh(generate_unit_square(n, jitter, seed)),
        dm(make_dof_map(mesh, j)),
        rt(mesh, j),
        op(mesh, rt) {}
};

}  // namespace

TEST_CASE("homogeneous data gives the zero solution") {
  for (int j = 0; j <= 1; ++j) {
    Setup s(4, 0.2, 7, j);
    const LinearSystem sys = assemble_system(
        s.mesh, s.dm, s.op, [](const Vec2&) { return 0.0; },
        [](const Vec2&) { return 0.0; },
        [](const Vec2&, const Vec2&) { return 0.0; });
    const Solution sol = solve(s.mesh, s.dm, sys);
    CHECK(sol.u.interior.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sol.u.edge.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sol.w.interior.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sol.w.edge.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("scaling the load scales the solution") {
  Setup s(4, 0.2, 3, 0);
  const ProblemSpec p = builtin_problem("u1");
  const LinearSystem sys1 =
      assemble_system(s.mesh, s.dm, s.op, p.rhs_f, p.g1(), p.g2());
  const LinearSystem sys10 = assemble_system(
      s.mesh, s.dm, s.op,
      [&p](const Vec2& x) { return 10.0 * p.rhs_f(x); }, p.g1(), p.g2());
  const Solution a = solve(s.mesh, s.dm, sys1);
  const Solution b = solve(s.mesh, s.dm, sys10);
  const double scale_u = (b.u.interior - 10.0 * a.u.interior).cwiseAbs().maxCoeff();
  const double scale_w = (b.w.interior - 10.0 * a.w.interior).cwiseAbs().maxCoeff();
  const double ref = 10.0 * a.w.interior.cwiseAbs().maxCoeff();
  CHECK(scale_u < 1e-10 * ref);
  CHECK(scale_w < 1e-10 * ref);
}

TEST_CASE("mean of w vanishes for the fully homogeneous problem") {
  Setup s(6, 0.2, 7, 0);
  const ProblemSpec p = builtin_problem("u1");
  const LinearSystem sys =
      assemble_system(s.mesh, s.dm, s.op, p.rhs_f, p.g1(), p.g2());
  const Solution sol = solve(s.mesh, s.dm, sys);
  CHECK(std::abs(mean_value(sol.w, s.mesh)) < 1e-9);
  CHECK(sol.residual_rel < 1e-10);
}

TEST_CASE("u1 energy error lands near the reported magnitude") {
  // Literature value at h = 0.1 on an unstructured mesh: 1.33e-03 for
  // || grad_w e_u ||; mesh differences motivate the loose factor.
  Setup s(10, 0.2, 7, 0);
  const ProblemSpec p = builtin_problem("u1");
  const LinearSystem sys =
      assemble_system(s.mesh, s.dm, s.op, p.rhs_f, p.g1(), p.g2());
  const Solution sol = solve(s.mesh, s.dm, sys);
  const ErrorReport rep = error_report(s.mesh, s.op, sol.u, p.exact_u);
  CHECK(rep.grad_norm > 1.33e-03 / 3.0);
  CHECK(rep.grad_norm < 1.33e-03 * 3.0);
}

TEST_CASE("direct and minres paths agree") {
  Setup s(3, 0.2, 5, 0);
  const ProblemSpec p = builtin_problem("u2");
  const LinearSystem sys =
      assemble_system(s.mesh, s.dm, s.op, p.rhs_f, p.g1(), p.g2());
  const Solution direct = solve(s.mesh, s.dm, sys, SolverMethod::Direct);
  const Solution iterative = solve(s.mesh, s.dm, sys, SolverMethod::Minres);
  CHECK(iterative.stats.iterations > 0);
  const double scale = direct.w.interior.cwiseAbs().maxCoeff();
  CHECK((direct.w.interior - iterative.w.interior).cwiseAbs().maxCoeff() <
        1e-7 * scale);
  CHECK((direct.u.interior - iterative.u.interior).cwiseAbs().maxCoeff() <
        1e-7 * scale);
}

TEST_CASE("solve_spd basics") {
  // Identity.
  SparseMat eye(3, 3);
  eye.setIdentity();
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  CHECK((solve_spd(eye, b) - b).norm() == 0.0);

  // 2x2 [[2,1],[1,2]] with rhs (3,3) -> (1,1).
  SparseMat m(2, 2);
  m.insert(0, 0) = 2;
  m.insert(0, 1) = 1;
  m.insert(1, 0) = 1;
  m.insert(1, 1) = 2;
  m.makeCompressed();
  Eigen::VectorXd rhs(2);
  rhs << 3, 3;
  const Eigen::VectorXd x = solve_spd(m, rhs);
  CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x(1) == doctest::Approx(1.0).epsilon(1e-14));

  // Seeded random SPD 100x100 via B^T B + I.
  std::mt19937_64 rng(42);
  auto u = [&rng]() {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  };
  Eigen::MatrixXd dense(100, 100);
  for (int i = 0; i < 100; ++i)
    for (int k = 0; k < 100; ++k) dense(i, k) = u();
  const Eigen::MatrixXd spd =
      dense.transpose() * dense + Eigen::MatrixXd::Identity(100, 100);
  SparseMat sparse = spd.sparseView();
  Eigen::VectorXd rhs100(100);
  for (int i = 0; i < 100; ++i) rhs100(i) = u();
  const Eigen::VectorXd sol = solve_spd(sparse, rhs100);
  CHECK((sparse * sol - rhs100).norm() / rhs100.norm() <= 1e-10);

  // Indefinite matrix is rejected.
  SparseMat indef(2, 2);
  indef.insert(0, 0) = 1;
  indef.insert(1, 1) = -1;
  indef.makeCompressed();
  CHECK_THROWS_AS(solve_spd(indef, rhs), SolverError);
}
