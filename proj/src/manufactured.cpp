#include "sbm/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace sbm {

PoissonCase poisson_trig_case() {
  constexpr double k = 2.0 * std::numbers::pi;
  PoissonCase c;
  c.name = "trig";
  c.u.value = [](const Vec2& x) { return x.y * std::sin(k * x.x) - x.x * std::cos(k * x.y); };
  c.u.grad = [](const Vec2& x) {
    return Vec2{k * x.y * std::cos(k * x.x) - std::cos(k * x.y), std::sin(k * x.x) + k * x.x * std::sin(k * x.y)};
  };
  c.u.hessian = [](const Vec2& x) {
    Mat2 h;
    h.xx = -k * k * x.y * std::sin(k * x.x);
    h.xy = h.yx = k * std::cos(k * x.x) + k * std::sin(k * x.y);
    h.yy = k * k * x.x * std::cos(k * x.y);
    return h;
  };
  // -lap(u) = k^2 u.
  c.forcing = [](const Vec2& x) { return k * k * (x.y * std::sin(k * x.x) - x.x * std::cos(k * x.y)); };
  return c;
}

PoissonCase poisson_affine_case(double a, double b, double c0) {
  PoissonCase c;
  c.name = "affine";
  c.u.value = [=](const Vec2& x) { return a * x.x + b * x.y + c0; };
  c.u.grad = [=](const Vec2&) { return Vec2{a, b}; };
  c.u.hessian = [](const Vec2&) { return Mat2{}; };
  c.forcing = [](const Vec2&) { return 0.0; };
  return c;
}

PoissonCase poisson_quadratic_case() {
  PoissonCase c;
  c.name = "quadratic";
  c.u.value = [](const Vec2& x) { return x.x * x.x; };
  c.u.grad = [](const Vec2& x) { return Vec2{2.0 * x.x, 0.0}; };
  c.u.hessian = [](const Vec2&) { return Mat2{2.0, 0.0, 0.0, 0.0}; };
  c.forcing = [](const Vec2&) { return -2.0; };
  return c;
}

Vec2 StokesCase::traction(const Vec2& x, const Vec2& n) const {
  const Mat2 g = u.jacobian(x);
  const double pr = p.value(x);
  const double sxx = 2.0 * mu * g.xx - pr;
  const double syy = 2.0 * mu * g.yy - pr;
  const double sxy = mu * (g.xy + g.yx);
  return {sxx * n.x + sxy * n.y, sxy * n.x + syy * n.y};
}

Vec2 StokesCase::momentum_residual(const Vec2& x) const {
  const Mat2 hx = hessian_ux(x);
  const Mat2 hy = hessian_uy(x);
  // div(2 mu eps(u)) = mu (lap(u) + grad(div u))
  const Vec2 div_stress{mu * (hx.xx + hx.yy + hx.xx + hy.xy), mu * (hy.xx + hy.yy + hx.xy + hy.yy)};
  return -div_stress + p.grad(x) - forcing(x);
}

double StokesCase::divergence(const Vec2& x) const {
  const Mat2 g = u.jacobian(x);
  return g.xx + g.yy;
}

StokesCase stokes_polynomial_exp_case(double mu) {
  // P(x) = -0.2x^3 - 0.2x^2 + x + 1; u_x = -P cos y, u_y = P' sin y.
  const auto P = [](double x) { return -0.2 * x * x * x - 0.2 * x * x + x + 1.0; };
  const auto P1 = [](double x) { return -0.6 * x * x - 0.4 * x + 1.0; };
  const auto P2 = [](double x) { return -1.2 * x - 0.4; };
  constexpr double P3 = -1.2;

  StokesCase c;
  c.name = "polynomial-exp";
  c.mu = mu;
  c.u.value = [=](const Vec2& x) { return Vec2{-P(x.x) * std::cos(x.y), P1(x.x) * std::sin(x.y)}; };
  c.u.jacobian = [=](const Vec2& x) {
    Mat2 g;
    g.xx = -P1(x.x) * std::cos(x.y);
    g.xy = P(x.x) * std::sin(x.y);
    g.yx = P2(x.x) * std::sin(x.y);
    g.yy = P1(x.x) * std::cos(x.y);
    return g;
  };
  c.hessian_ux = [=](const Vec2& x) {
    Mat2 h;
    h.xx = -P2(x.x) * std::cos(x.y);
    h.xy = h.yx = P1(x.x) * std::sin(x.y);
    h.yy = P(x.x) * std::cos(x.y);
    return h;
  };
  c.hessian_uy = [=](const Vec2& x) {
    Mat2 h;
    h.xx = P3 * std::sin(x.y);
    h.xy = h.yx = P2(x.x) * std::cos(x.y);
    h.yy = -P1(x.x) * std::sin(x.y);
    return h;
  };
  c.p.value = [](const Vec2& x) { return x.x * x.x * std::exp(x.x * x.y) + x.y * x.y; };
  c.p.grad = [](const Vec2& x) {
    const double e = std::exp(x.x * x.y);
    return Vec2{2.0 * x.x * e + x.x * x.x * x.y * e, x.x * x.x * x.x * e + 2.0 * x.y};
  };
  c.forcing = [=](const Vec2& x) {
    // Divergence-free, so -div(2 mu eps(u)) = -mu lap(u).
    const double lap_x = (-P2(x.x) + P(x.x)) * std::cos(x.y);
    const double lap_y = (P3 - P1(x.x)) * std::sin(x.y);
    const double e = std::exp(x.x * x.y);
    const Vec2 gp{2.0 * x.x * e + x.x * x.x * x.y * e, x.x * x.x * x.x * e + 2.0 * x.y};
    return Vec2{-mu * lap_x + gp.x, -mu * lap_y + gp.y};
  };
  return c;
}

StokesCase stokes_affine_case(double mu, double p0) {
  StokesCase c;
  c.name = "affine";
  c.mu = mu;
  c.u.value = [](const Vec2& x) { return Vec2{x.x, -x.y}; };
  c.u.jacobian = [](const Vec2&) { return Mat2{1.0, 0.0, 0.0, -1.0}; };
  c.hessian_ux = [](const Vec2&) { return Mat2{}; };
  c.hessian_uy = [](const Vec2&) { return Mat2{}; };
  c.p.value = [=](const Vec2&) { return p0; };
  c.p.grad = [](const Vec2&) { return Vec2{}; };
  c.forcing = [](const Vec2&) { return Vec2{}; };
  return c;
}

std::function<Vec2(const Vec2&)> traction_on(const StokesCase& c, const DomainGeometry& geom) {
  return [c, geom](const Vec2& x) { return c.traction(x, boundary_normal(geom, project(geom, x))); };
}

}  // namespace sbm
