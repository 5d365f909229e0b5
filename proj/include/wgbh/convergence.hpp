#pragma once

#include <string>

#include "wgbh/norms.hpp"
#include "wgbh/problems.hpp"
#include "wgbh/solver.hpp"

namespace wgbh {

struct StudyConfig {
  std::string problem = "u1";
  int levels = 5;
  int n0 = 14;          // initial grid subdivisions; h ~ sqrt(2)/n0
  int j = 0;
  double jitter = 0.2;
  unsigned seed = 7;
  bool projection_errors = false;  // Ritz/Neumann-based error definition
  SolverMethod solver = SolverMethod::Direct;
  QuadConfig quad;
};

struct ConvergenceRow {
  double h = 0.0;
  ErrorReport eu;
  ErrorReport ew;
};

struct ConvergenceTable {
  static constexpr int kColumns = 6;
  static const char* const kColumnNames[kColumns];

  std::vector<ConvergenceRow> rows;
  std::vector<OrderFit> orders;  // one fit per column, set for >= 2 rows

  std::vector<double> hs() const;
  double column(int row, int col) const;
};

ConvergenceTable run_convergence(const StudyConfig& config);
ConvergenceTable run_convergence(const ProblemSpec& problem,
                                 const StudyConfig& config);

/// Run one mesh (loaded or generated) and report the error norms.
struct SingleSolveReport {
  double h = 0.0;
  ErrorReport eu;
  ErrorReport ew;
  double residual = 0.0;
  double w_mean = 0.0;
};
SingleSolveReport solve_on_mesh(const Mesh& mesh, const ProblemSpec& problem,
                                const StudyConfig& config);

std::string emit_csv(const ConvergenceTable& table);
std::string emit_markdown(const ConvergenceTable& table);

}  // namespace wgbh
