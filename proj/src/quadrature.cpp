#include "sbm/quadrature.hpp"

#include <cmath>

#include "sbm/vec2.hpp"

namespace sbm {

namespace {

// Weights below are fractions of the element area; scaled by 1/2 at the end.
void add_orbit3(CellRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({a, a, b});
  r.points.push_back({a, b, a});
  r.points.push_back({b, a, a});
  for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

void add_orbit6(CellRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  r.points.push_back({a, b, c});
  r.points.push_back({a, c, b});
  r.points.push_back({b, a, c});
  r.points.push_back({b, c, a});
  r.points.push_back({c, a, b});
  r.points.push_back({c, b, a});
  for (int i = 0; i < 6; ++i) r.weights.push_back(w);
}

CellRule finish(CellRule r) {
  for (auto& w : r.weights) w *= 0.5;
  return r;
}

CellRule make_degree1() {
  CellRule r{1, {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, {1.0}};
  return finish(r);
}

CellRule make_degree2() {
  CellRule r;
  r.degree = 2;
  add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
  return finish(r);
}

// Strang-Fix / Dunavant 6-point rule.
CellRule make_degree4() {
  CellRule r;
  r.degree = 4;
  add_orbit3(r, 0.44594849091596488631832925388305, 0.22338158967801146569500700843312);
  add_orbit3(r, 0.091576213509770743459571463402202, 0.10995174365532186763832632490021);
  return finish(r);
}

// Dunavant 12-point rule.
CellRule make_degree6() {
  CellRule r;
  r.degree = 6;
  add_orbit3(r, 0.24928674517091042129163855310702, 0.11678627572637936602528961138558);
  add_orbit3(r, 0.063089014491502228340331602870819, 0.050844906370206816920936809106869);
  add_orbit6(r, 0.053145049844816947353249671631398, 0.31035245103378440541660773395655,
             0.082851075618373575193553456420442);
  return finish(r);
}

EdgeRule make_gauss(int n) {
  // Symmetric nodes/weights on [-1, 1], mapped to [0, 1] below.
  std::vector<double> x, w;
  switch (n) {
    case 1:
      x = {0.0};
      w = {2.0};
      break;
    case 2:
      x = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
      w = {1.0, 1.0};
      break;
    case 3:
      x = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
      w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    case 4: {
      const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(1.2));
      const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(1.2));
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      x = {-b, -a, a, b};
      w = {wb, wa, wa, wb};
      break;
    }
    case 5: {
      const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      x = {-b, -a, 0.0, a, b};
      w = {wb, wa, 128.0 / 225.0, wa, wb};
      break;
    }
    default:
      throw Error("quadrature: Gauss rule with " + std::to_string(n) + " points not available");
  }
  EdgeRule r;
  r.degree = 2 * n - 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.points.push_back(0.5 * (x[i] + 1.0));
    r.weights.push_back(0.5 * w[i]);
  }
  return r;
}

}  // namespace

const CellRule& cell_rule(int degree) {
  static const CellRule d1 = make_degree1();
  static const CellRule d2 = make_degree2();
  static const CellRule d4 = make_degree4();
  static const CellRule d6 = make_degree6();
  if (degree <= 1) return d1;
  if (degree == 2) return d2;
  if (degree <= 4) return d4;
  if (degree <= 6) return d6;
  throw Error("quadrature: no cell rule of degree " + std::to_string(degree));
}

const EdgeRule& gauss_rule(int npoints) {
  static const EdgeRule rules[] = {make_gauss(1), make_gauss(2), make_gauss(3), make_gauss(4),
                                   make_gauss(5)};
  if (npoints < 1 || npoints > 5) {
    throw Error("quadrature: Gauss rule with " + std::to_string(npoints) + " points not available");
  }
  return rules[npoints - 1];
}

}  // namespace sbm
