#pragma once

#include <string>
#include <vector>

#include "wgbh/convergence.hpp"
#include "wgbh/projections.hpp"

namespace wgbh {

/// One verified identity or property; `value` is the measured residual (or
/// ratio) and `threshold` the bound it must stay under.
struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

namespace checks {

CheckResult mesh_invariants(int n, double jitter, unsigned seed);
CheckResult quadrature_exactness();
CheckResult projection_orthogonality(const Mesh& mesh, int j);
CheckResult rt_duality(const Mesh& mesh, int j);
CheckResult pih_normal_continuity(const Mesh& mesh, int j);
CheckResult commuting_diagram(const Mesh& mesh, int j);
CheckResult weak_gradient_defining(const Mesh& mesh, int j, unsigned seed);
CheckResult weak_gradient_commutativity(const Mesh& mesh, int j);
CheckResult weak_gradient_kernel(const Mesh& mesh, int j);
CheckResult stab_mass_identity(const Mesh& mesh, int j, unsigned seed);
CheckResult stiffness_kernel_and_symmetry(const Mesh& mesh, int j);
CheckResult divergence_identity(const Mesh& mesh, int j, unsigned seed);
CheckResult divergence_identity_homogeneous(const Mesh& mesh, int j,
                                            unsigned seed);
CheckResult infsup_witness_identity(const Mesh& mesh, int j, unsigned seed);
CheckResult wellposed_zero_solution(const Mesh& mesh, int j);
CheckResult mean_zero_dual(const Mesh& mesh, int j);
CheckResult solution_retest(const Mesh& mesh, int j);
CheckResult ritz_normal_continuity(const Mesh& mesh, int j);
CheckResult ritz_orthogonality(const Mesh& mesh, int j);
CheckResult neumann_divergence_identity(const Mesh& mesh, int j);
CheckResult neumann_multiplier(const Mesh& mesh, int j);

}  // namespace checks

struct CheckOptions {
  int n = 6;
  double jitter = 0.2;
  unsigned seed = 7;
};

/// The full lemma-level property suite over j in {0, 1}, on a jittered mesh
/// and one refinement of it.
std::vector<CheckResult> run_property_suite(const CheckOptions& options = {});

}  // namespace wgbh
