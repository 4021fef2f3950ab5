#pragma once

#include <spinwire/errors.hpp>
#include <spinwire/types.hpp>

namespace spinwire {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  RealVector nodes;
  RealVector weights;

  Index size() const { return nodes.size(); }
};

GaussLegendreRule gauss_legendre(Index point_count);

/// The base rule replicated over `panels` equal panels of [a, b].
/// Nodes are strictly interior to each panel and ascend over the interval.
struct CompositeGrid {
  RealVector nodes;
  RealVector weights;

  Index size() const { return nodes.size(); }
};

CompositeGrid composite_gauss_legendre(const GaussLegendreRule& rule, Real a, Real b,
                                       Index panels);

}  // namespace spinwire
