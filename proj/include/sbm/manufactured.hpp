#pragma once

#include <functional>
#include <string>

#include "sbm/fields.hpp"
#include "sbm/geometry.hpp"
#include "sbm/vec2.hpp"

namespace sbm {

/// Exact Poisson solution with forcing f = -lap(u).
struct PoissonCase {
  std::string name;
  ScalarField u;
  std::function<double(const Vec2&)> forcing;
};

/// u = y sin(2 pi x) - x cos(2 pi y).
PoissonCase poisson_trig_case();
/// u = a x + b y + c.
PoissonCase poisson_affine_case(double a = 2.0, double b = -3.0, double c = 1.0);
/// u = x^2.
PoissonCase poisson_quadratic_case();

/// Exact Stokes solution with forcing f = -div(2 mu eps(u)) + grad(p).
struct StokesCase {
  std::string name;
  double mu = 1.0;
  VectorField u;
  ScalarField p;
  std::function<Vec2(const Vec2&)> forcing;

  /// Traction (2 mu eps(u) - p I) n.
  Vec2 traction(const Vec2& x, const Vec2& n) const;
  /// Strong-form momentum and continuity residuals at x, by the analytic
  /// second derivatives (zero for a consistent case).
  Vec2 momentum_residual(const Vec2& x) const;
  double divergence(const Vec2& x) const;

  /// Second derivatives of the velocity components, used by the residuals.
  std::function<Mat2(const Vec2&)> hessian_ux;
  std::function<Mat2(const Vec2&)> hessian_uy;
};

/// p = x^2 e^{xy} + y^2, u_x = -(-0.2x^3 - 0.2x^2 + x + 1) cos y,
/// u_y = (-0.6x^2 - 0.4x + 1) sin y.
StokesCase stokes_polynomial_exp_case(double mu = 1.0);
/// u = (x, -y), p = p0.
StokesCase stokes_affine_case(double mu = 1.0, double p0 = 0.5);

/// Traction field on the boundary of geom: the stress of the exact
/// solution applied to the true normal at the closest boundary point.
std::function<Vec2(const Vec2&)> traction_on(const StokesCase& c, const DomainGeometry& geom);

}  // namespace sbm
