#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "wgbh/errors.hpp"
#include "wgbh/mesh.hpp"

namespace wgbh {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Immutable quadrature rule on the reference triangle (0,0)-(1,0)-(0,1)
/// or the reference segment [0,1]. Integrates all polynomials of total
/// degree <= exact_degree exactly.
struct QuadRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::VectorXd weights;
  int exact_degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Conical-product Gauss rule on the reference triangle, degree in [1, 10].
QuadRule triangle_rule(int degree);

/// Gauss-Legendre rule on [0, 1], degree in [1, 20]. Points are stored in
/// the first coordinate column; the second column is zero.
QuadRule segment_rule(int degree);

double integrate_tri(const ScalarField& f, const std::array<Vec2, 3>& tri,
                     const QuadRule& rule);
double integrate_tri(const ScalarField& f, const Mesh& mesh, int t,
                     const QuadRule& rule);
double integrate_edge(const ScalarField& f, const Vec2& a, const Vec2& b,
                      const QuadRule& rule);
double integrate_edge(const ScalarField& f, const Mesh& mesh, int e,
                      const QuadRule& rule);

}  // namespace wgbh
