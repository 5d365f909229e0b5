#include "wgbh/checks.hpp"

#include <cmath>

namespace wgbh {

namespace {

constexpr double legendre_gamma(int p) { return p == 0 ? 1.0 : 1.0 / 3.0; }

CheckResult make(const std::string& name, double value, double threshold) {
  return {name, value <= threshold, value, threshold};
}

double reference_monomial_integral(int a, int b) {
  double value = 1.0;
  for (int k = 1; k <= a; ++k) value *= k;
  for (int k = 1; k <= b; ++k) value *= k;
  for (int k = 1; k <= a + b + 2; ++k) value /= k;
  return value;
}

/// (data, grad_w psi) for every basis psi, as a full-size DOF vector.
Eigen::VectorXd gradient_pairing(const Mesh& mesh, const DofMap& dm,
                                 const WeakGradOperator& op,
                                 const RtField& data) {
  const RtSpace& rt = op.rt();
  const int r = rt.local_dim();
  WgFunction acc = zero_wg_function(mesh, dm.j);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd loc =
        op.local(t).transpose() *
        (rt.local(t).mass * data.coeffs.segment(static_cast<long>(t) * r, r));
    op.scatter_add(t, loc, acc);
  }
  return flatten(dm, acc);
}

/// Boundary sum of <(q . n_out), v_b> over boundary edges.
double boundary_flux_pairing(const Mesh& mesh, const RtSpace& rt,
                             const RtField& q, const WgFunction& v) {
  const int j = rt.order();
  const int edim = edge_dim(j);
  double sum = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.boundary_edge[static_cast<std::size_t>(e)]) continue;
    const int t = mesh.edge_tris[static_cast<std::size_t>(e)][0];
    double sign = 0.0;
    for (int k = 0; k < 3; ++k)
      if (mesh.tri_edges[static_cast<std::size_t>(t)][k].edge == e)
        sign = mesh.tri_edges[static_cast<std::size_t>(t)][k].sign;
    const Eigen::VectorXd trace = sign * rt.normal_trace(q, t, e);
    const double len = mesh.edge_length(e);
    for (int p = 0; p < edim; ++p)
      sum += trace(p) * v.edge(static_cast<long>(e) * edim + p) *
             legendre_gamma(p) * len;
  }
  return sum;
}

double scalar_product(const Mesh& mesh, const RtSpace& rt,
                      const WeakGradOperator& op, const RtField& a,
                      const WgFunction& v) {
  const int r = rt.local_dim();
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd gv = op.local(t) * op.local_coeffs(v, t);
    sum += a.coeffs.segment(static_cast<long>(t) * r, r)
               .dot(rt.local(t).mass * gv);
  }
  return sum;
}

const ScalarField kBubble = [](const Vec2& x) {
  return x.x() * (1 - x.x()) * x.y() * (1 - x.y());
};
const VectorField kBubbleGrad = [](const Vec2& x) -> Vec2 {
  return {(1 - 2 * x.x()) * x.y() * (1 - x.y()),
          x.x() * (1 - x.x()) * (1 - 2 * x.y())};
};

}  // namespace

namespace checks {

CheckResult mesh_invariants(int n, double jitter, unsigned seed) {
  try {
    Mesh m = generate_unit_square(n, jitter, seed);
    validate_mesh(m, true);
    double area0 = 0.0;
    for (double a : m.area_per_tri) area0 += a;
    m = refine_uniform(m);
    validate_mesh(m, true);
    double area1 = 0.0;
    for (double a : m.area_per_tri) area1 += a;
    return make("mesh-invariants", std::abs(area1 - area0) / area0, 1e-12);
  } catch (const Error&) {
    return {"mesh-invariants", false, 1.0, 1e-12};
  }
}

CheckResult quadrature_exactness() {
  double worst = 0.0;
  for (int degree = 1; degree <= 10; ++degree) {
    const QuadRule rule = triangle_rule(degree);
    for (int a = 0; a + 0 <= rule.exact_degree; ++a)
      for (int b = 0; a + b <= rule.exact_degree; ++b) {
        double sum = 0.0;
        for (int q = 0; q < rule.size(); ++q)
          sum += rule.weights(q) * std::pow(rule.points(q, 0), a) *
                 std::pow(rule.points(q, 1), b);
        const double exact = reference_monomial_integral(a, b);
        worst = std::max(worst, std::abs(sum - exact) / exact);
      }
  }
  for (int degree = 1; degree <= 20; ++degree) {
    const QuadRule rule = segment_rule(degree);
    for (int a = 0; a <= rule.exact_degree; ++a) {
      double sum = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        sum += rule.weights(q) * std::pow(rule.points(q, 0), a);
      worst = std::max(worst, std::abs(sum - 1.0 / (a + 1)) * (a + 1));
    }
  }
  return make("quadrature-exactness", worst, 1e-13);
}

CheckResult projection_orthogonality(const Mesh& mesh, int j) {
  const ScalarField f = [](const Vec2& x) {
    return std::sin(3 * x.x()) * std::cos(2 * x.y());
  };
  const WgFunction q = project_Qh(f, mesh, j, 10, 14);
  const QuadRule tri_rule = triangle_rule(10);
  const QuadRule edge_rule = segment_rule(14);
  double worst = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int k = 0; k < interior_dim(j); ++k)
      worst = std::max(
          worst, std::abs(integrate_tri(
                     [&](const Vec2& x) {
                       return (f(x) - eval(mesh, q, t, x)) *
                              interior_basis(mesh, t, k, j, x);
                     },
                     mesh, t, tri_rule)));
  for (int e = 0; e < mesh.num_edges(); ++e)
    for (int k = 0; k < edge_dim(j); ++k) {
      const auto p = mesh.edge_points(e);
      const Vec2 d = p[1] - p[0];
      double moment = 0.0;
      for (int qp = 0; qp < edge_rule.size(); ++qp) {
        const double t01 = edge_rule.points(qp, 0);
        moment += edge_rule.weights(qp) * d.norm() *
                  (f(p[0] + t01 * d) - eval_edge(mesh, q, e, t01)) *
                  edge_basis(k, t01);
      }
      worst = std::max(worst, std::abs(moment));
    }
  return make("qh-projection-orthogonality", worst, 1e-12);
}

CheckResult rt_duality(const Mesh& mesh, int j) {
  const RtSpace rt(mesh, j);
  const QuadRule edge_rule = segment_rule(2 * j + 4);
  const QuadRule tri_rule = triangle_rule(2 * j + 4);
  double worst = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int i = 0; i < rt.local_dim(); ++i) {
      for (int k = 0; k < 3; ++k) {
        const int e = mesh.tri_edges[static_cast<std::size_t>(t)][k].edge;
        const auto ep = mesh.edge_points(e);
        const Vec2 d = ep[1] - ep[0];
        const Vec2 n = mesh.edge_normal(e);
        for (int p = 0; p <= j; ++p) {
          double moment = 0.0;
          for (int q = 0; q < edge_rule.size(); ++q) {
            const double t01 = edge_rule.points(q, 0);
            moment += edge_rule.weights(q) *
                      rt.eval_basis(t, i, ep[0] + t01 * d).dot(n) *
                      edge_basis(p, t01);
          }
          const double want = rt.edge_dof(k, p) == i ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(moment - want));
        }
      }
      if (j >= 1) {
        const auto tri = mesh.tri_points(t);
        const Vec2 d1 = tri[1] - tri[0];
        const Vec2 d2 = tri[2] - tri[0];
        Vec2 mom = Vec2::Zero();
        for (int q = 0; q < tri_rule.size(); ++q) {
          const Vec2 x = tri[0] + tri_rule.points(q, 0) * d1 +
                         tri_rule.points(q, 1) * d2;
          mom += (tri_rule.weights(q) * 2.0) * rt.eval_basis(t, i, x);
        }
        mom.x() -= i == rt.interior_dof(0) ? 1.0 : 0.0;
        mom.y() -= i == rt.interior_dof(1) ? 1.0 : 0.0;
        worst = std::max(worst, mom.cwiseAbs().maxCoeff());
      }
    }
  }
  return make("rt-moment-duality", worst, 1e-12);
}

CheckResult pih_normal_continuity(const Mesh& mesh, int j) {
  const RtSpace rt(mesh, j);
  const double c = 2 * M_PI;
  const RtField field = interpolate_Pih(
      rt,
      [c](const Vec2& x) -> Vec2 {
        return {c * std::cos(c * x.x()) * std::sin(c * x.y()),
                c * std::sin(c * x.x()) * std::cos(c * x.y())};
      },
      12, 10);
  double worst = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.boundary_edge[static_cast<std::size_t>(e)]) continue;
    worst = std::max(worst, rt.normal_jump_norm(field, e));
  }
  return make("pih-normal-continuity", worst, 1e-12);
}

CheckResult commuting_diagram(const Mesh& mesh, int j) {
  const RtSpace rt(mesh, j);
  auto poly = [j](const Vec2& x) -> Vec2 {
    if (j == 0) return {0.5 - x.x() + 2 * x.y(), 1.0 + 3 * x.x() - x.y()};
    return {x.x() * x.x() - x.y() + 0.3 * x.x() * x.y(),
            2 * x.y() * x.y() + 0.5 * x.x() * x.x() - 1.0};
  };
  auto div_poly = [j](const Vec2& x) {
    return j == 0 ? -2.0 : 2 * x.x() + 0.3 * x.y() + 4 * x.y();
  };
  const RtField ip = interpolate_Pih(rt, poly);
  const WgFunction q0 = project_Qh(div_poly, mesh, j);
  double worst = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd div = rt.divergence(ip, t);
    const Eigen::VectorXd want =
        q0.interior.segment(static_cast<long>(t) * interior_dim(j),
                            interior_dim(j));
    worst = std::max(
        worst, (div - want).cwiseAbs().maxCoeff() / std::max(1.0, want.norm()));
  }
  return make("commuting-diagram", worst, 1e-12);
}

CheckResult weak_gradient_defining(const Mesh& mesh, int j, unsigned seed) {
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const WgFunction v = random_wg_function(mesh, j, seed);
  const RtField grad = op.apply(v);
  const QuadRule tri_rule = triangle_rule(2 * j + 2);
  const QuadRule edge_rule = segment_rule(2 * j + 2);
  double worst = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int i = 0; i < rt.local_dim(); ++i) {
      const double lhs = integrate_tri(
          [&](const Vec2& x) {
            return rt.eval(grad, t, x).dot(rt.eval_basis(t, i, x));
          },
          mesh, t, tri_rule);
      double rhs = -integrate_tri(
          [&](const Vec2& x) {
            double div = 0.0;
            for (int k = 0; k < interior_dim(j); ++k)
              div += rt.local(t).div(k, i) * interior_basis(mesh, t, k, j, x);
            return eval(mesh, v, t, x) * div;
          },
          mesh, t, tri_rule);
      for (int k = 0; k < 3; ++k) {
        const auto& te = mesh.tri_edges[static_cast<std::size_t>(t)][k];
        const auto ep = mesh.edge_points(te.edge);
        const Vec2 d = ep[1] - ep[0];
        const Vec2 n_out = te.sign * mesh.edge_normal(te.edge);
        for (int q = 0; q < edge_rule.size(); ++q) {
          const double t01 = edge_rule.points(q, 0);
          rhs += edge_rule.weights(q) * d.norm() *
                 eval_edge(mesh, v, te.edge, t01) *
                 rt.eval_basis(t, i, ep[0] + t01 * d).dot(n_out);
        }
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return make("weak-gradient-defining-equation", worst, 1e-12);
}

CheckResult weak_gradient_commutativity(const Mesh& mesh, int j) {
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const double c = 2 * M_PI;
  struct Case {
    ScalarField v;
    VectorField grad;
  };
  const std::vector<Case> cases = {
      {[](const Vec2& x) { return x.x(); },
       [](const Vec2&) { return Vec2(1, 0); }},
      {[](const Vec2& x) { return x.y(); },
       [](const Vec2&) { return Vec2(0, 1); }},
      {[](const Vec2& x) { return x.x() * x.x(); },
       [](const Vec2& x) { return Vec2(2 * x.x(), 0); }},
      {[](const Vec2& x) { return x.x() * x.y(); },
       [](const Vec2& x) { return Vec2(x.y(), x.x()); }},
      {[c](const Vec2& x) { return std::sin(c * x.x()) * std::sin(c * x.y()); },
       [c](const Vec2& x) {
         return Vec2(c * std::cos(c * x.x()) * std::sin(c * x.y()),
                     c * std::sin(c * x.x()) * std::cos(c * x.y()));
       }}};
  double worst = 0.0;
  for (const auto& cs : cases) {
    const RtField lhs = op.apply(project_Qh(cs.v, mesh, j, 10, 12));
    const RtField rhs = project_Ph(rt, cs.grad, 10);
    const double scale = std::max(1.0, rhs.coeffs.cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (lhs.coeffs - rhs.coeffs).cwiseAbs().maxCoeff() / scale);
  }
  return make("weak-gradient-commutativity", worst, 1e-11);
}

CheckResult weak_gradient_kernel(const Mesh& mesh, int j) {
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  WgFunction c = zero_wg_function(mesh, j);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    c.interior(static_cast<long>(t) * interior_dim(j)) = 2.72;
  for (int e = 0; e < mesh.num_edges(); ++e)
    c.edge(static_cast<long>(e) * edge_dim(j)) = 2.72;
  return make("weak-gradient-kernel-constants",
              op.apply(c).coeffs.cwiseAbs().maxCoeff(), 1e-12);
}

CheckResult stab_mass_identity(const Mesh& mesh, int j, unsigned seed) {
  const DofMap dm = make_dof_map(mesh, j);
  const SparseMat s = assemble_stab_mass(mesh, dm);
  const WgFunction v = random_wg_function(mesh, j, seed);
  const Eigen::VectorXd x = flatten(dm, v);
  const double quad_form = x.dot(s * x);
  const double norm_sq = norm_0h(mesh, v) * norm_0h(mesh, v);
  return make("stabilized-inner-product-norm-identity",
              std::abs(quad_form - norm_sq) / std::max(1.0, quad_form), 1e-12);
}

CheckResult stiffness_kernel_and_symmetry(const Mesh& mesh, int j) {
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const SparseMat a = assemble_stiffness(mesh, dm, op);
  const SparseMat diff = SparseMat(a.transpose()) - a;
  double worst = 0.0;
  for (int o = 0; o < diff.outerSize(); ++o)
    for (SparseMat::InnerIterator it(diff, o); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  WgFunction c = zero_wg_function(mesh, j);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    c.interior(static_cast<long>(t) * interior_dim(j)) = 1.0;
  for (int e = 0; e < mesh.num_edges(); ++e)
    c.edge(static_cast<long>(e) * edge_dim(j)) = 1.0;
  worst = std::max(worst, (a * flatten(dm, c)).cwiseAbs().maxCoeff());
  return make("stiffness-symmetry-and-kernel", worst, 1e-12);
}

namespace {

CheckResult divergence_identity_impl(const Mesh& mesh, int j, unsigned seed,
                                     bool homogeneous) {
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const WgFunction v = random_wg_function(mesh, j, seed, homogeneous);
  const VectorField q = [](const Vec2& x) -> Vec2 {
    return {x.x() * x.x() - x.y() + 1.0, x.x() * x.y() + 2.0};
  };
  const ScalarField div_q = [](const Vec2& x) { return 3.0 * x.x(); };
  const RtField iq = interpolate_Pih(rt, q);

  const QuadRule tri_rule = triangle_rule(j + 3);
  double lhs = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    lhs += integrate_tri(
        [&](const Vec2& x) { return div_q(x) * eval(mesh, v, t, x); }, mesh, t,
        tri_rule);

  double rhs = -scalar_product(mesh, rt, op, iq, v);
  if (!homogeneous) rhs += boundary_flux_pairing(mesh, rt, iq, v);

  const char* name = homogeneous ? "divergence-identity-homogeneous"
                                 : "divergence-identity";
  return make(name, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-11);
}

}  // namespace

CheckResult divergence_identity(const Mesh& mesh, int j, unsigned seed) {
  return divergence_identity_impl(mesh, j, seed, false);
}

CheckResult divergence_identity_homogeneous(const Mesh& mesh, int j,
                                            unsigned seed) {
  return divergence_identity_impl(mesh, j, seed, true);
}

CheckResult infsup_witness_identity(const Mesh& mesh, int j, unsigned seed) {
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const WgFunction psi = random_wg_function(mesh, j, seed, true);
  const WgFunction witness = inf_sup_witness(op, psi);
  const RtField grad_witness = op.apply(witness);
  const double pairing = scalar_product(mesh, rt, op, grad_witness, psi);
  const double tb = triple_bar_norm(op, psi);
  return make("inf-sup-witness-identity",
              std::abs(pairing - tb * tb) / std::max(1.0, tb * tb), 1e-10);
}

CheckResult wellposed_zero_solution(const Mesh& mesh, int j) {
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const LinearSystem sys = assemble_system(
      mesh, dm, op, [](const Vec2&) { return 0.0; },
      [](const Vec2&) { return 0.0; },
      [](const Vec2&, const Vec2&) { return 0.0; });
  const Solution sol = solve(mesh, dm, sys);
  const double worst =
      std::max({sol.u.interior.cwiseAbs().maxCoeff(),
                sol.u.edge.cwiseAbs().maxCoeff(),
                sol.w.interior.cwiseAbs().maxCoeff(),
                sol.w.edge.cwiseAbs().maxCoeff()});
  return make("wellposed-zero-data-zero-solution", worst, 1e-10);
}

CheckResult mean_zero_dual(const Mesh& mesh, int j) {
  const ProblemSpec p = builtin_problem("u1");
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const LinearSystem sys =
      assemble_system(mesh, dm, op, p.rhs_f, p.g1(), p.g2());
  const Solution sol = solve(mesh, dm, sys);
  return make("dual-variable-mean-zero",
              std::abs(mean_value(sol.w, mesh)), 1e-9);
}

CheckResult solution_retest(const Mesh& mesh, int j) {
  const ProblemSpec p = builtin_problem("u2");
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const LinearSystem sys =
      assemble_system(mesh, dm, op, p.rhs_f, p.g1(), p.g2());
  const Solution sol = solve(mesh, dm, sys);

  const SparseMat s = assemble_stab_mass(mesh, dm);
  const SparseMat a = assemble_stiffness(mesh, dm, op);
  const Eigen::VectorXd g2vec = assemble_boundary_pairing(mesh, dm, p.g2());
  const Eigen::VectorXd load = assemble_load(mesh, dm, p.rhs_f);

  const Eigen::VectorXd w = flatten(dm, sol.w);
  const Eigen::VectorXd u = flatten(dm, sol.u);  // includes boundary values

  const Eigen::VectorXd r1 = s * w - a * u + g2vec;
  const double scale1 = (s * w).norm() + (a * u).norm() + g2vec.norm();
  double worst = r1.norm() / std::max(1.0, scale1);

  const Eigen::VectorXd aw = a * w;
  double r2 = 0.0, scale2 = 0.0;
  for (int r = 0; r < dm.n_reduced(); ++r) {
    const int full = dm.reduced_to_full[static_cast<std::size_t>(r)];
    const double diff = aw(full) - load(full);
    r2 += diff * diff;
    scale2 += aw(full) * aw(full) + load(full) * load(full);
  }
  worst = std::max(worst, std::sqrt(r2) / std::max(1.0, std::sqrt(scale2)));
  return make("solution-satisfies-both-equations", worst, 1e-9);
}

CheckResult ritz_normal_continuity(const Mesh& mesh, int j) {
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const ProjectionResult res = ritz_project(mesh, dm, op, kBubbleGrad);
  const RtField grad = op.apply(res.projected);
  const double scale = std::max(rt.l2_norm(grad), 1e-30);
  double worst = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.boundary_edge[static_cast<std::size_t>(e)]) continue;
    worst = std::max(worst, rt.normal_jump_norm(grad, e));
  }
  return make("ritz-gradient-normal-continuity", worst / scale, 1e-10);
}

CheckResult ritz_orthogonality(const Mesh& mesh, int j) {
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const ProjectionResult res = ritz_project(mesh, dm, op, kBubbleGrad);
  const WgFunction qh = project_Qh(kBubble, mesh, j);

  const SparseMat a = assemble_stiffness(mesh, dm, op);
  const Eigen::VectorXd lhs = a * flatten(dm, qh - res.projected);
  const Eigen::VectorXd rhs =
      gradient_pairing(mesh, dm, op, project_Ph(rt, kBubbleGrad)) -
      gradient_pairing(mesh, dm, op, res.rhs_interp);

  double worst = 0.0;
  for (int r = 0; r < dm.n_reduced(); ++r) {
    const int full = dm.reduced_to_full[static_cast<std::size_t>(r)];
    worst = std::max(worst, std::abs(lhs(full) - rhs(full)));
  }
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  return make("ritz-galerkin-orthogonality", worst / scale, 1e-10);
}

namespace {

ProjectionResult neumann_cos(const Mesh& mesh, const DofMap& dm,
                             const WeakGradOperator& op) {
  const VectorField grad = [](const Vec2& x) -> Vec2 {
    return {-M_PI * std::sin(M_PI * x.x()) * std::cos(M_PI * x.y()),
            -M_PI * std::cos(M_PI * x.x()) * std::sin(M_PI * x.y())};
  };
  return neumann_project(mesh, dm, op, grad, 12, 10);
}

}  // namespace

CheckResult neumann_divergence_identity(const Mesh& mesh, int j) {
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const ProjectionResult res = neumann_cos(mesh, dm, op);
  const ScalarField lap = [](const Vec2& x) {
    return -2 * M_PI * M_PI * std::cos(M_PI * x.x()) * std::cos(M_PI * x.y());
  };
  const WgFunction q0 = project_Qh(lap, mesh, j, 10, 12);
  const RtField grad = op.apply(res.projected);
  double worst = 0.0;
  const double scale = 2 * M_PI * M_PI;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd div = rt.divergence(grad, t);
    const Eigen::VectorXd want = q0.interior.segment(
        static_cast<long>(t) * interior_dim(j), interior_dim(j));
    worst = std::max(worst, (div - want).cwiseAbs().maxCoeff() / scale);
  }
  return make("neumann-divergence-identity", worst, 1e-9);
}

CheckResult neumann_multiplier(const Mesh& mesh, int j) {
  const DofMap dm = make_dof_map(mesh, j);
  const RtSpace rt(mesh, j);
  const WeakGradOperator op(mesh, rt);
  const ProjectionResult res = neumann_cos(mesh, dm, op);
  double worst = std::abs(res.multiplier);
  worst = std::max(worst, std::abs(mean_value(res.projected, mesh)));
  return make("neumann-mean-zero-and-multiplier", worst, 1e-9);
}

}  // namespace checks

std::vector<CheckResult> run_property_suite(const CheckOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(checks::mesh_invariants(options.n, options.jitter,
                                            options.seed));
  results.push_back(checks::quadrature_exactness());

  const Mesh coarse =
      generate_unit_square(options.n, options.jitter, options.seed);
  const Mesh fine = refine_uniform(coarse);
  const Mesh trig_mesh = generate_unit_square(20, options.jitter, options.seed);

  for (int j = 0; j <= 1; ++j) {
    const std::string tag = " (j=" + std::to_string(j) + ")";
    auto push = [&results, &tag](CheckResult r) {
      r.name += tag;
      results.push_back(std::move(r));
    };
    push(checks::projection_orthogonality(coarse, j));
    push(checks::rt_duality(coarse, j));
    push(checks::pih_normal_continuity(fine, j));
    push(checks::commuting_diagram(coarse, j));
    push(checks::weak_gradient_defining(coarse, j, options.seed));
    push(checks::weak_gradient_commutativity(trig_mesh, j));
    push(checks::weak_gradient_kernel(coarse, j));
    push(checks::stab_mass_identity(coarse, j, options.seed + 1));
    push(checks::stiffness_kernel_and_symmetry(coarse, j));
    push(checks::divergence_identity(fine, j, options.seed + 2));
    push(checks::divergence_identity_homogeneous(fine, j, options.seed + 3));
    push(checks::infsup_witness_identity(fine, j, options.seed + 4));
    push(checks::wellposed_zero_solution(coarse, j));
    push(checks::mean_zero_dual(fine, j));
    push(checks::solution_retest(fine, j));
    push(checks::ritz_normal_continuity(fine, j));
    push(checks::ritz_orthogonality(fine, j));
    push(checks::neumann_divergence_identity(fine, j));
    push(checks::neumann_multiplier(fine, j));
  }
  return results;
}

}  // namespace wgbh
