// Gauss-Legendre abscissas and weights by Newton iteration on the Legendre
// recurrence, then composite replication over equal panels.

#include <spinwire/quadrature.hpp>

#include <cmath>
#include <string>

namespace spinwire {

GaussLegendreRule gauss_legendre(Index point_count) {
  if (point_count < 1) {
    throw InvalidParams("point_count: must be >= 1, got " + std::to_string(point_count));
  }
  const Index n = point_count;
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const Real pi = std::acos(-1.0);
  const Index m = (n + 1) / 2;  // roots come in symmetric pairs
  for (Index i = 0; i < m; ++i) {
    Real z = std::cos(pi * (static_cast<Real>(i) + 0.75) / (static_cast<Real>(n) + 0.5));
    Real pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: (j+1) P_{j+1} = (2j+1) z P_j - j P_{j-1}
      Real p1 = 1.0, p2 = 0.0;
      for (Index j = 0; j < n; ++j) {
        const Real p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<Real>(j) + 1.0) * z * p2 - static_cast<Real>(j) * p3) /
             (static_cast<Real>(j) + 1.0);
      }
      pp = static_cast<Real>(n) * (z * p1 - p2) / (z * z - 1.0);
      const Real z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  if (n % 2 == 1) rule.nodes[m - 1] = 0.0;
  return rule;
}

CompositeGrid composite_gauss_legendre(const GaussLegendreRule& rule, Real a, Real b,
                                       Index panels) {
  if (panels < 1) {
    throw InvalidParams("panels: must be >= 1, got " + std::to_string(panels));
  }
  if (!(b > a)) throw InvalidParams("interval: need b > a");

  const Index per = rule.size();
  CompositeGrid grid;
  grid.nodes.resize(per * panels);
  grid.weights.resize(per * panels);

  const Real h = (b - a) / static_cast<Real>(panels);
  for (Index p = 0; p < panels; ++p) {
    const Real lo = a + static_cast<Real>(p) * h;
    const Real mid = lo + 0.5 * h;
    for (Index i = 0; i < per; ++i) {
      grid.nodes[p * per + i] = mid + 0.5 * h * rule.nodes[i];
      grid.weights[p * per + i] = 0.5 * h * rule.weights[i];
    }
  }
  return grid;
}

}  // namespace spinwire
