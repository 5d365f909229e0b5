#include "wgbh/convergence.hpp"

#include <cstdio>

#include "wgbh/projections.hpp"

namespace wgbh {

const char* const ConvergenceTable::kColumnNames[ConvergenceTable::kColumns] =
    {"eu_grad", "eu_l2", "eu_edge", "ew_grad", "ew_l2", "ew_edge"};

std::vector<double> ConvergenceTable::hs() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.h);
  return out;
}

double ConvergenceTable::column(int row, int col) const {
  const auto& r = rows[static_cast<std::size_t>(row)];
  switch (col) {
    case 0: return r.eu.grad_norm;
    case 1: return r.eu.l2_0;
    case 2: return r.eu.edge;
    case 3: return r.ew.grad_norm;
    case 4: return r.ew.l2_0;
    case 5: return r.ew.edge;
    default: throw InvalidArgument("column index out of range");
  }
}

namespace {

ErrorReport report_of(const Mesh& mesh, const WeakGradOperator& op,
                      const WgFunction& diff) {
  // Norms of an explicitly formed error function.
  ErrorReport rep;
  rep.grad_norm = weak_grad_norm(op, diff);
  rep.l2_0h = norm_0h(mesh, diff);
  rep.edge = edge_norm(mesh, diff);
  rep.h1_semi = seminorm_1h(mesh, diff);
  // || e_0 ||^2 = || e ||_{0,h}^2 minus the stabilization part; recompute
  // directly instead for accuracy.
  double sq = 0.0;
  const int idim = interior_dim(diff.j);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto c = diff.interior.segment(static_cast<long>(t) * idim, idim);
    sq += c.dot(interior_mass(mesh, t, diff.j) * c);
  }
  rep.l2_0 = std::sqrt(std::max(sq, 0.0));
  return rep;
}

}  // namespace

SingleSolveReport solve_on_mesh(const Mesh& mesh, const ProblemSpec& problem,
                                const StudyConfig& config) {
  const DofMap dm = make_dof_map(mesh, config.j);
  const RtSpace rt(mesh, config.j);
  const WeakGradOperator op(mesh, rt);
  const LinearSystem sys = assemble_system(
      mesh, dm, op, problem.rhs_f, problem.g1(), problem.g2(), config.quad);
  const Solution sol = solve(mesh, dm, sys, config.solver);

  SingleSolveReport rep;
  rep.h = mesh.h;
  rep.residual = sol.residual_rel;
  rep.w_mean = mean_value(sol.w, mesh);

  if (config.projection_errors) {
    if (!problem.projections_allowed)
      throw InvalidArgument("projection-based errors are not defined for " +
                            problem.name);
    const ProjectionResult ru = ritz_project(mesh, dm, op, problem.grad_u,
                                             config.quad.data_edge_degree,
                                             config.quad.data_tri_degree);
    const ProjectionResult nw = neumann_project(mesh, dm, op, problem.grad_w,
                                                config.quad.data_edge_degree,
                                                config.quad.data_tri_degree);
    rep.eu = report_of(mesh, op, ru.projected - sol.u);
    rep.ew = report_of(mesh, op, nw.projected - sol.w);
  } else {
    rep.eu = error_report(mesh, op, sol.u, problem.exact_u,
                          config.quad.data_tri_degree,
                          config.quad.data_edge_degree);
    rep.ew = error_report(mesh, op, sol.w, problem.exact_w,
                          config.quad.data_tri_degree,
                          config.quad.data_edge_degree);
  }
  return rep;
}

ConvergenceTable run_convergence(const ProblemSpec& problem,
                                 const StudyConfig& config) {
  if (config.levels < 1) throw InvalidArgument("levels must be >= 1");
  check_problem_consistency(problem);

  ConvergenceTable table;
  Mesh mesh = generate_unit_square(config.n0, config.jitter, config.seed);
  for (int level = 0; level < config.levels; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    const SingleSolveReport rep = solve_on_mesh(mesh, problem, config);
    table.rows.push_back({rep.h, rep.eu, rep.ew});
  }

  if (table.rows.size() >= 2) {
    const std::vector<double> hs = table.hs();
    for (int col = 0; col < ConvergenceTable::kColumns; ++col) {
      std::vector<double> errs;
      errs.reserve(table.rows.size());
      for (std::size_t r = 0; r < table.rows.size(); ++r)
        errs.push_back(table.column(static_cast<int>(r), col));
      table.orders.push_back(fit_order(hs, errs));
    }
  }
  return table;
}

ConvergenceTable run_convergence(const StudyConfig& config) {
  return run_convergence(builtin_problem(config.problem), config);
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string ord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string emit_csv(const ConvergenceTable& table) {
  if (table.rows.empty()) throw InvalidArgument("empty convergence table");
  std::string out = "h";
  for (const char* name : ConvergenceTable::kColumnNames)
    out += std::string(",") + name;
  out += "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += sci(table.rows[r].h);
    for (int col = 0; col < ConvergenceTable::kColumns; ++col)
      out += "," + sci(table.column(static_cast<int>(r), col));
    out += "\n";
  }
  if (!table.orders.empty()) {
    out += "order_lsq";
    for (const auto& fit : table.orders) out += "," + ord(fit.lsq);
    out += "\norder_pairwise_last";
    for (const auto& fit : table.orders) out += "," + ord(fit.pairwise_last);
    out += "\n";
  }
  return out;
}

std::string emit_markdown(const ConvergenceTable& table) {
  if (table.rows.empty()) throw InvalidArgument("empty convergence table");
  std::string out = "| h |";
  for (const char* name : ConvergenceTable::kColumnNames)
    out += std::string(" ") + name + " |";
  out += "\n|---|";
  for (int col = 0; col < ConvergenceTable::kColumns; ++col) out += "---|";
  out += "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += "| " + sci(table.rows[r].h) + " |";
    for (int col = 0; col < ConvergenceTable::kColumns; ++col)
      out += " " + sci(table.column(static_cast<int>(r), col)) + " |";
    out += "\n";
  }
  if (!table.orders.empty()) {
    out += "| order_lsq |";
    for (const auto& fit : table.orders) out += " " + ord(fit.lsq) + " |";
    out += "\n| order_pairwise_last |";
    for (const auto& fit : table.orders) out += " " + ord(fit.pairwise_last) + " |";
    out += "\n";
  }
  return out;
}

}  // namespace wgbh
