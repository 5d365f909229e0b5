#include "wgbh/quadrature.hpp"

#include <cmath>
#include <vector>

namespace wgbh {

namespace {

/// n-point Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on
/// the three-term recurrence. Accurate to machine precision for n <= ~100.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess.
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -t;
    x[static_cast<std::size_t>(n - 1 - i)] = t;
    const double wi = 2.0 / ((1.0 - t * t) * pp * pp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

/// Same rule mapped to [0, 1].
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
  gauss_legendre(n, x, w);
  for (auto& v : x) v = 0.5 * (v + 1.0);
  for (auto& v : w) v *= 0.5;
}

}  // namespace

QuadRule triangle_rule(int degree) {
  if (degree < 1 || degree > 10)
    throw InvalidArgument("triangle_rule: degree must be in [1, 10]");

  // Conical product: map (s, t) in [0,1]^2 to (s, t(1-s)) with weight (1-s).
  // Folding (1-s) into the integrand raises the s-degree by one.
  const int ns = (degree + 3) / 2;
  const int nt = (degree + 2) / 2;
  std::vector<double> xs, ws, xt, wt;
  gauss_legendre01(ns, xs, ws);
  gauss_legendre01(nt, xt, wt);

  QuadRule rule;
  rule.exact_degree = degree;
  rule.points.resize(ns * nt, 2);
  rule.weights.resize(ns * nt);
  int idx = 0;
  for (int i = 0; i < ns; ++i) {
    for (int k = 0; k < nt; ++k, ++idx) {
      const double s = xs[static_cast<std::size_t>(i)];
      const double t = xt[static_cast<std::size_t>(k)] * (1.0 - s);
      rule.points(idx, 0) = s;
      rule.points(idx, 1) = t;
      rule.weights(idx) = ws[static_cast<std::size_t>(i)] *
                          wt[static_cast<std::size_t>(k)] * (1.0 - s);
    }
  }
  return rule;
}

QuadRule segment_rule(int degree) {
  if (degree < 1 || degree > 20)
    throw InvalidArgument("segment_rule: degree must be in [1, 20]");
  const int n = (degree + 2) / 2;
  std::vector<double> x, w;
  gauss_legendre01(n, x, w);

  QuadRule rule;
  rule.exact_degree = 2 * n - 1;
  rule.points.setZero(n, 2);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points(i, 0) = x[static_cast<std::size_t>(i)];
    rule.weights(i) = w[static_cast<std::size_t>(i)];
  }
  return rule;
}

double integrate_tri(const ScalarField& f, const std::array<Vec2, 3>& tri,
                     const QuadRule& rule) {
  const Vec2 d1 = tri[1] - tri[0];
  const Vec2 d2 = tri[2] - tri[0];
  const double jac = d1.x() * d2.y() - d1.y() * d2.x();  // 2 * area, CCW > 0
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 x = tri[0] + rule.points(q, 0) * d1 + rule.points(q, 1) * d2;
    sum += rule.weights(q) * f(x);
  }
  return sum * jac;
}

double integrate_tri(const ScalarField& f, const Mesh& mesh, int t,
                     const QuadRule& rule) {
  return integrate_tri(f, mesh.tri_points(t), rule);
}

double integrate_edge(const ScalarField& f, const Vec2& a, const Vec2& b,
                      const QuadRule& rule) {
  const Vec2 d = b - a;
  const double len = d.norm();
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    sum += rule.weights(q) * f(a + rule.points(q, 0) * d);
  return sum * len;
}

double integrate_edge(const ScalarField& f, const Mesh& mesh, int e,
                      const QuadRule& rule) {
  const auto p = mesh.edge_points(e);
  return integrate_edge(f, p[0], p[1], rule);
}

}  // namespace wgbh
