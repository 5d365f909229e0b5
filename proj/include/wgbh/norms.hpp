#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wgbh/weak_gradient.hpp"

namespace wgbh {

/// All mesh-dependent norms of one error function e = Q_h(exact) - v_h.
/// triple_bar is present only when the argument has zero boundary-edge
/// coefficients.
struct ErrorReport {
  double grad_norm = 0.0;  // || grad_w e ||
  double l2_0 = 0.0;       // || e_0 ||
  double edge = 0.0;       // (sum_K h_K ||e_b||^2_dK)^(1/2)
  double l2_0h = 0.0;      // || e ||_{0,h}
  double h1_semi = 0.0;    // | e |_{1,h}
  std::optional<double> triple_bar;
};

/// h attached to an edge-indexed sum: the mean of the adjacent element
/// sizes (one-sided on the boundary).
double edge_h(const Mesh& mesh, int e);

double norm_0h(const Mesh& mesh, const WgFunction& v);
double seminorm_1h(const Mesh& mesh, const WgFunction& v);
double weak_grad_norm(const WeakGradOperator& op, const WgFunction& v);
double edge_norm(const Mesh& mesh, const WgFunction& v);

/// Discrete H2-like norm: elementwise divergence of the weak gradient plus
/// 1/h-weighted normal jumps (one-sided on the boundary). The argument must
/// have zero boundary-edge coefficients.
double triple_bar_norm(const WeakGradOperator& op, const WgFunction& v);

/// The function v* with v*_0 = -div grad_w psi and v*_b = h^-1 [grad_w psi . n]
/// that saturates the inf-sup bound: (grad_w v*, grad_w psi) = |||psi|||^2.
WgFunction inf_sup_witness(const WeakGradOperator& op, const WgFunction& psi);

ErrorReport error_report(const Mesh& mesh, const WeakGradOperator& op,
                         const WgFunction& vh, const ScalarField& exact,
                         int quad_tri_degree = 8, int quad_edge_degree = 10);

struct OrderFit {
  double lsq = 0.0;
  std::vector<double> pairwise;
  double pairwise_last = 0.0;
};

/// Slope of log(err) against log(h), least-squares over all levels plus
/// consecutive-pair slopes. Requires at least two levels and positive errors.
OrderFit fit_order(std::span<const double> hs, std::span<const double> errs);

}  // namespace wgbh
