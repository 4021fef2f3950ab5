#pragma once

#include <spinwire/dynamics.hpp>

#include <vector>

namespace spinwire {

/// Fidelity magnitudes over a (t, D) grid; row = t index, column = D index.
struct SweepGrid {
  RealVector t_axis;
  RealVector d_axis;
  RealMatrix values;
  ChainParams metadata;
};

/// |F(t_i)| with d_coupling = d_j; one eigendecomposition per D column.
SweepGrid sweep_td(const ChainParams& params, const RealVector& t_axis,
                   const RealVector& d_axis);

struct Interval {
  Real lo = 0.0;
  Real hi = 0.0;

  Real span() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
};

struct MaximizationResult {
  Real best_t = 0.0;
  Real best_d = 0.0;
  Real best_fidelity = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Coarse grid plus local refinement (window shrinks 4x around the incumbent
/// per round) until the grid resolution drops below 1e-6 on every free axis
/// or the evaluation budget runs out (converged = false, never an exception).
/// Ties break toward smaller t, then smaller D. A degenerate d_range pins D.
MaximizationResult maximize_fidelity(const ChainParams& params, Interval t_range,
                                     Interval d_range, long budget);

/// Pairwise max-over-t deviations of |F(t)| between uniform field values.
struct BInvarianceReport {
  struct Pair {
    Real b_first = 0.0;
    Real b_second = 0.0;
    Real max_deviation = 0.0;
  };

  std::vector<Real> b_values;
  std::vector<Pair> pairs;
  Real max_deviation = 0.0;
  Real tolerance = 0.0;
  bool pass = false;
};

BInvarianceReport b_invariance_scan(const ChainParams& params, const std::vector<Real>& b_values,
                                    const RealVector& t_axis, Real tolerance = 1e-10);

}  // namespace spinwire
