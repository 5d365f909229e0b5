#include "wgbh/problems.hpp"

#include <cmath>

namespace wgbh {

namespace {

// One-dimensional factors of the bubble solution x^2 (1-x)^2.
double bub(double s) { return s * s * (1 - s) * (1 - s); }
double bub1(double s) { return 2 * s - 6 * s * s + 4 * s * s * s; }
double bub2(double s) { return 2 - 12 * s + 12 * s * s; }
double bub3(double s) { return -12 + 24 * s; }

ProblemSpec make_u1() {
  ProblemSpec p;
  p.name = "u1";
  p.exact_u = [](const Vec2& v) { return bub(v.x()) * bub(v.y()); };
  p.grad_u = [](const Vec2& v) -> Vec2 {
    return {bub1(v.x()) * bub(v.y()), bub(v.x()) * bub1(v.y())};
  };
  p.exact_w = [](const Vec2& v) {
    return -(bub2(v.x()) * bub(v.y()) + bub(v.x()) * bub2(v.y()));
  };
  p.grad_w = [](const Vec2& v) -> Vec2 {
    return {-(bub3(v.x()) * bub(v.y()) + bub1(v.x()) * bub2(v.y())),
            -(bub2(v.x()) * bub1(v.y()) + bub(v.x()) * bub3(v.y()))};
  };
  p.rhs_f = [](const Vec2& v) {
    return 24 * bub(v.y()) + 2 * bub2(v.x()) * bub2(v.y()) + 24 * bub(v.x());
  };
  return p;
}

ProblemSpec make_trig(bool shifted) {
  const double c = 2 * M_PI;
  // u2 = sin(cx) sin(cy); u3 shifts both phases by pi/2, i.e. cos cos.
  auto sx = [c, shifted](double s) {
    return shifted ? std::cos(c * s) : std::sin(c * s);
  };
  auto dsx = [c, shifted](double s) {
    return shifted ? -c * std::sin(c * s) : c * std::cos(c * s);
  };
  ProblemSpec p;
  p.name = shifted ? "u3" : "u2";
  p.exact_u = [sx](const Vec2& v) { return sx(v.x()) * sx(v.y()); };
  p.grad_u = [sx, dsx](const Vec2& v) -> Vec2 {
    return {dsx(v.x()) * sx(v.y()), sx(v.x()) * dsx(v.y())};
  };
  p.exact_w = [sx, c](const Vec2& v) {
    return 2 * c * c * sx(v.x()) * sx(v.y());
  };
  p.grad_w = [sx, dsx, c](const Vec2& v) -> Vec2 {
    return {2 * c * c * dsx(v.x()) * sx(v.y()),
            2 * c * c * sx(v.x()) * dsx(v.y())};
  };
  p.rhs_f = [sx, c](const Vec2& v) {
    return 4 * c * c * c * c * sx(v.x()) * sx(v.y());
  };
  return p;
}

ProblemSpec make_u4() {
  // u4 = r^{3/2} (sin(3 theta/2) - 3 sin(theta/2)) in polar coordinates at
  // the corner (0,0); biharmonic with w = -laplace(u) = 6 r^{-1/2}
  // sin(theta/2) and f = 0. theta in [0, pi/2] over the unit square.
  ProblemSpec p;
  p.name = "u4";
  p.projections_allowed = false;

  auto polar = [](const Vec2& v) {
    return std::pair<double, double>(v.norm(), std::atan2(v.y(), v.x()));
  };
  p.exact_u = [polar](const Vec2& v) {
    const auto [r, th] = polar(v);
    return std::pow(r, 1.5) * (std::sin(1.5 * th) - 3 * std::sin(0.5 * th));
  };
  p.grad_u = [polar](const Vec2& v) -> Vec2 {
    const auto [r, th] = polar(v);
    const double sr = std::sqrt(r);
    const double ur = 1.5 * sr * (std::sin(1.5 * th) - 3 * std::sin(0.5 * th));
    const double ut_over_r = 1.5 * sr * (std::cos(1.5 * th) - std::cos(0.5 * th));
    const Vec2 er(std::cos(th), std::sin(th));
    const Vec2 et(-std::sin(th), std::cos(th));
    return ur * er + ut_over_r * et;
  };
  p.exact_w = [polar](const Vec2& v) {
    const auto [r, th] = polar(v);
    return 6.0 / std::sqrt(r) * std::sin(0.5 * th);
  };
  p.grad_w = [polar](const Vec2& v) -> Vec2 {
    const auto [r, th] = polar(v);
    const double wr = -3.0 * std::pow(r, -1.5) * std::sin(0.5 * th);
    const double wt_over_r = 3.0 * std::pow(r, -1.5) * std::cos(0.5 * th);
    const Vec2 er(std::cos(th), std::sin(th));
    const Vec2 et(-std::sin(th), std::cos(th));
    return wr * er + wt_over_r * et;
  };
  p.rhs_f = [](const Vec2&) { return 0.0; };
  return p;
}

/// 5-point Laplacian with one Richardson step; error O(h^4 f^(6)).
double fd_laplacian(const ScalarField& f, const Vec2& x, double h) {
  auto lap = [&](double step) {
    return (f({x.x() + step, x.y()}) + f({x.x() - step, x.y()}) +
            f({x.x(), x.y() + step}) + f({x.x(), x.y() - step}) -
            4.0 * f(x)) /
           (step * step);
  };
  return (4.0 * lap(h / 2) - lap(h)) / 3.0;
}

Vec2 fd_gradient(const ScalarField& f, const Vec2& x, double h) {
  auto grad = [&](double step) -> Vec2 {
    return {(f({x.x() + step, x.y()}) - f({x.x() - step, x.y()})) / (2 * step),
            (f({x.x(), x.y() + step}) - f({x.x(), x.y() - step})) / (2 * step)};
  };
  return (4.0 * grad(h / 2) - grad(h)) / 3.0;
}

}  // namespace

ScalarField ProblemSpec::g1() const {
  return exact_u;
}

BoundaryField ProblemSpec::g2() const {
  const VectorField grad = grad_u;
  return [grad](const Vec2& x, const Vec2& n) { return grad(x).dot(n); };
}

ProblemSpec builtin_problem(std::string_view name) {
  if (name == "u1") return make_u1();
  if (name == "u2") return make_trig(false);
  if (name == "u3") return make_trig(true);
  if (name == "u4") return make_u4();
  throw InvalidArgument("unknown problem '" + std::string(name) +
                        "' (expected u1, u2, u3 or u4)");
}

void check_problem_consistency(const ProblemSpec& p) {
  // Interior points away from the u4 corner.
  const Vec2 samples[] = {{0.31, 0.43}, {0.57, 0.36}, {0.44, 0.71},
                          {0.73, 0.62}, {0.36, 0.55}};
  const double h = 1e-3;
  const double tol = 1e-5;

  for (const Vec2& x : samples) {
    const double w = p.exact_w(x);
    const double lap_u = fd_laplacian(p.exact_u, x, h);
    if (std::abs(-lap_u - w) > tol * (1.0 + std::abs(w)))
      throw InvalidArgument("problem " + p.name +
                            ": -laplace(u) does not match w");

    const double f = p.rhs_f(x);
    const double lap_w = fd_laplacian(p.exact_w, x, h);
    if (std::abs(-lap_w - f) > tol * (1.0 + std::abs(f) + std::abs(w)))
      throw InvalidArgument("problem " + p.name +
                            ": -laplace(w) does not match f");

    const Vec2 gu = p.grad_u(x);
    if ((fd_gradient(p.exact_u, x, h) - gu).norm() > tol * (1.0 + gu.norm()))
      throw InvalidArgument("problem " + p.name + ": grad_u mismatch");
    if (p.grad_w) {
      const Vec2 gw = p.grad_w(x);
      if ((fd_gradient(p.exact_w, x, h) - gw).norm() > tol * (1.0 + gw.norm()))
        throw InvalidArgument("problem " + p.name + ": grad_w mismatch");
    }
  }
}

}  // namespace wgbh
