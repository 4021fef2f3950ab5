#include <spinwire/sweep.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace spinwire {

namespace {

void check_axis(const RealVector& axis, const char* name) {
  if (axis.size() < 1) throw InvalidParams(std::string(name) + ": axis must be non-empty");
  for (Index i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) throw InvalidParams(std::string(name) + ": axis must be finite");
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw InvalidParams(std::string(name) + ": axis must be strictly increasing");
    }
  }
}

}  // namespace

SweepGrid sweep_td(const ChainParams& params, const RealVector& t_axis,
                   const RealVector& d_axis) {
  check_axis(t_axis, "t_axis");
  check_axis(d_axis, "d_axis");

  SweepGrid grid{t_axis, d_axis, RealMatrix(t_axis.size(), d_axis.size()), params};
  for (Index j = 0; j < d_axis.size(); ++j) {
    const SpectralDecomposition decomp = eigendecompose(params.with_d(d_axis[j]));
    for (Index i = 0; i < t_axis.size(); ++i) {
      grid.values(i, j) = transfer_amplitude(decomp, t_axis[i], params.alpha()).magnitude;
    }
  }
  return grid;
}

namespace {

constexpr Real kResolutionTarget = 1e-6;

struct Incumbent {
  Real t = 0.0;
  Real d = 0.0;
  Real fidelity = -1.0;
};

// Shrink `window` to a quarter of its span centered on `center`, clamped to
// stay inside `bounds`.
Interval shrink_window(Interval window, Real center, Interval bounds) {
  const Real span = window.span() / 4.0;
  Real lo = center - span / 2.0;
  Real hi = lo + span;
  if (lo < bounds.lo) {
    lo = bounds.lo;
    hi = lo + span;
  }
  if (hi > bounds.hi) {
    hi = bounds.hi;
    lo = hi - span;
  }
  return Interval{lo, hi};
}

}  // namespace

MaximizationResult maximize_fidelity(const ChainParams& params, Interval t_range,
                                     Interval d_range, long budget) {
  if (!(std::isfinite(t_range.lo) && std::isfinite(t_range.hi) && t_range.lo < t_range.hi)) {
    throw InvalidParams("t_range: need finite lo < hi");
  }
  if (!(std::isfinite(d_range.lo) && std::isfinite(d_range.hi) && d_range.lo <= d_range.hi)) {
    throw InvalidParams("d_range: need finite lo <= hi");
  }
  if (budget < 100) {
    throw InvalidParams("budget: must be >= 100, got " + std::to_string(budget));
  }

  const bool d_free = !d_range.degenerate();
  const Index nt = d_free ? 17 : 33;
  const Index nd = d_free ? 17 : 1;

  Interval t_window = t_range;
  Interval d_window = d_range;
  Incumbent best;
  long evaluations = 0;
  bool converged = false;

  while (true) {
    const RealVector ts = linspace(t_window.lo, t_window.hi, nt);
    const RealVector ds = linspace(d_window.lo, d_window.hi, nd);

    // One decomposition per distinct D in this round; the t-major scan below
    // realizes the smaller-t-then-smaller-D tie rule via strict improvement.
    std::map<Real, SpectralDecomposition> decomps;
    bool out_of_budget = false;
    for (Index it = 0; it < nt && !out_of_budget; ++it) {
      for (Index id = 0; id < nd; ++id) {
        if (evaluations >= budget) {
          out_of_budget = true;
          break;
        }
        auto found = decomps.find(ds[id]);
        if (found == decomps.end()) {
          found = decomps.emplace(ds[id], eigendecompose(params.with_d(ds[id]))).first;
        }
        const Real value = transfer_amplitude(found->second, ts[it], params.alpha()).magnitude;
        ++evaluations;
        if (value > best.fidelity) best = Incumbent{ts[it], ds[id], value};
      }
    }
    if (out_of_budget) break;

    const Real res_t = t_window.span() / static_cast<Real>(nt - 1);
    const Real res_d = d_free ? d_window.span() / static_cast<Real>(nd - 1) : 0.0;
    if (res_t < kResolutionTarget && res_d < kResolutionTarget) {
      converged = true;
      break;
    }

    t_window = shrink_window(t_window, best.t, t_range);
    if (d_free) d_window = shrink_window(d_window, best.d, d_range);
  }

  return MaximizationResult{best.t, best.d, best.fidelity, evaluations, converged};
}

BInvarianceReport b_invariance_scan(const ChainParams& params, const std::vector<Real>& b_values,
                                    const RealVector& t_axis, Real tolerance) {
  if (b_values.empty()) throw InvalidParams("b_values: must be non-empty");
  check_axis(t_axis, "t_axis");

  const std::vector<Real> times(t_axis.begin(), t_axis.end());
  std::vector<RealVector> magnitudes;
  magnitudes.reserve(b_values.size());
  for (const Real b : b_values) {
    const auto series = fidelity_series(params.with_uniform_b(b), times);
    RealVector column(t_axis.size());
    for (Index i = 0; i < column.size(); ++i) column[i] = series[i].magnitude;
    magnitudes.push_back(std::move(column));
  }

  BInvarianceReport report;
  report.b_values = b_values;
  report.tolerance = tolerance;
  report.max_deviation = 0.0;
  for (std::size_t a = 0; a < b_values.size(); ++a) {
    for (std::size_t b = a + 1; b < b_values.size(); ++b) {
      const Real dev = (magnitudes[a] - magnitudes[b]).cwiseAbs().maxCoeff();
      report.pairs.push_back({b_values[a], b_values[b], dev});
      report.max_deviation = std::max(report.max_deviation, dev);
    }
  }
  report.pass = report.max_deviation < tolerance;
  return report;
}

}  // namespace spinwire
