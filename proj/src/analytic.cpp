#include <spinwire/analytic.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace spinwire {

namespace {

constexpr Index kPanelOrder = 16;

// Scale floor for the relative refinement test; below it the comparison is
// effectively absolute at tolerance * kMagnitudeFloor, which keeps near-zero
// fidelity values convergable within double precision.
constexpr Real kMagnitudeFloor = 1e-7;

Real pi() { return std::acos(-1.0); }

struct UniformChain {
  Index n;
  Real b;
  Real gamma_mod;
  EffectiveCoupling coupling;
};

UniformChain checked_uniform(const ChainParams& params, bool require_field,
                             bool require_coupling) {
  UniformChain c{params.n_sites(), params.field().uniform_value(),
                 0.0, effective_coupling(params.j_coupling(), params.d_coupling())};
  c.gamma_mod = c.coupling.modulus();
  if (require_field && c.b == 0.0) throw ZeroField();
  if (require_coupling && c.gamma_mod == 0.0) throw ZeroCoupling();
  return c;
}

void check_theta(Real theta) {
  if (!(std::abs(theta) <= pi())) throw ThetaOutOfRange();
}

// Normalization denominator of the continuum ansatz; zero exactly at
// theta = 0 and at +-pi up to rounding of pi, so values at the rounding
// level of the sines are treated as zero.
Real normalization_denominator(Index n, Real b, Real gamma_mod, Real theta) {
  const Real correction = gamma_mod / b;
  Real den = 0.0;
  for (Index m = 1; m < n; ++m) {
    const Real s = std::sin(static_cast<Real>(m) * theta);
    den += s * s;
  }
  const Real last = std::sin(static_cast<Real>(n) * theta) +
                    correction * std::sin(static_cast<Real>(n + 1) * theta);
  den += last * last;

  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real nr = static_cast<Real>(n);
  const Real floor = (pi() * eps * nr) * (pi() * eps * nr) * nr;
  if (!(den > floor)) throw ZeroDenominator();
  return den;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (node_count < 16) {
    throw InvalidParams("node_count: must be >= 16, got " + std::to_string(node_count));
  }
  if (!(refinement_tolerance > 0.0) || refinement_tolerance > 1e-4) {
    throw InvalidParams("refinement_tolerance: must lie in (0, 1e-4]");
  }
  if (max_refinements < 1) {
    throw InvalidParams("max_refinements: must be >= 1, got " + std::to_string(max_refinements));
  }
}

Real dispersion(const ChainParams& params, Real theta) {
  const auto chain = checked_uniform(params, false, false);
  check_theta(theta);
  return -(chain.b + 2.0 * chain.gamma_mod * std::cos(theta));
}

Real beta_squared(const ChainParams& params, Real theta) {
  const auto chain = checked_uniform(params, true, true);
  check_theta(theta);
  return 1.0 / normalization_denominator(chain.n, chain.b, chain.gamma_mod, theta);
}

ContinuumMode continuum_eigenvector(const ChainParams& params, Real theta) {
  const auto chain = checked_uniform(params, true, true);
  check_theta(theta);

  ContinuumMode mode;
  mode.theta = theta;
  mode.energy = -(chain.b + 2.0 * chain.gamma_mod * std::cos(theta));
  mode.beta =
      std::sqrt(1.0 / normalization_denominator(chain.n, chain.b, chain.gamma_mod, theta));

  const Index n = chain.n;
  const Real psi = chain.coupling.phase_step();  // arg of omega^{1/2}
  mode.amplitudes.resize(n);
  for (Index m = 1; m < n; ++m) {
    const Real a = psi * static_cast<Real>(m - 1);
    mode.amplitudes[m - 1] =
        mode.beta * std::sin(static_cast<Real>(m) * theta) * Complex(std::cos(a), std::sin(a));
  }
  {
    const Real a1 = psi * static_cast<Real>(n - 1);
    const Real a2 = psi * static_cast<Real>(n - 2);
    const Complex lead = Complex(std::cos(a1), std::sin(a1)) * std::sin(static_cast<Real>(n) * theta);
    const Complex corr = (std::conj(chain.coupling.gamma()) / chain.b) *
                         Complex(std::cos(a2), std::sin(a2)) *
                         std::sin(static_cast<Real>(n + 1) * theta);
    mode.amplitudes[n - 1] = mode.beta * (lead + corr);
  }
  return mode;
}

ContinuumFidelity::ContinuumFidelity(const ChainParams& params, QuadratureSpec spec)
    : params_(params), spec_(spec) {
  spec_.validate();
  const auto chain = checked_uniform(params_, true, true);
  b_ = chain.b;
  gamma_mod_ = chain.gamma_mod;

  const Real psi = chain.coupling.phase_step();
  const Real a = psi * static_cast<Real>(chain.n - 1);
  unimodular_prefactor_ = Complex(std::cos(a), std::sin(a));

  base_rule_ = gauss_legendre(kPanelOrder);
  initial_panels_ = (spec_.node_count + kPanelOrder - 1) / kPanelOrder;
}

const ContinuumFidelity::Level& ContinuumFidelity::level(Index refinement) {
  while (static_cast<Index>(levels_.size()) <= refinement) {
    const Index panels = initial_panels_ << levels_.size();
    const CompositeGrid grid = composite_gauss_legendre(base_rule_, -pi(), pi(), panels);

    Level lvl;
    lvl.nodes = grid.size();
    lvl.cos_theta.resize(grid.size());
    lvl.static_part.resize(grid.size());
    const Index n = params_.n_sites();
    const Real correction = gamma_mod_ / b_;
    for (Index i = 0; i < grid.size(); ++i) {
      const Real theta = grid.nodes[i];
      lvl.cos_theta[i] = std::cos(theta);
      const Real den = normalization_denominator(n, b_, gamma_mod_, theta);
      const Real shape = std::sin(theta) * (std::sin(static_cast<Real>(n) * theta) +
                                            correction * std::sin(static_cast<Real>(n + 1) * theta));
      lvl.static_part[i] = grid.weights[i] * shape / den;
    }
    levels_.push_back(std::move(lvl));
  }
  return levels_[refinement];
}

Complex ContinuumFidelity::amplitude_at_level(const Level& lvl, Real time) const {
  const Real k = 2.0 * params_.alpha() * time * gamma_mod_;
  // Kahan summation in fixed node order keeps the result deterministic and
  // the rounding floor below the refinement tolerance.
  Real sum_re = 0.0, c_re = 0.0;
  Real sum_im = 0.0, c_im = 0.0;
  for (Index i = 0; i < lvl.nodes; ++i) {
    const Real phase = k * lvl.cos_theta[i];
    const Real g = lvl.static_part[i];
    const Real re = g * std::cos(phase);
    const Real im = g * std::sin(phase);
    Real y = re - c_re;
    Real t = sum_re + y;
    c_re = (t - sum_re) - y;
    sum_re = t;
    y = im - c_im;
    t = sum_im + y;
    c_im = (t - sum_im) - y;
    sum_im = t;
  }
  const Real bt = params_.alpha() * b_ * time;
  const Complex field_phase(std::cos(bt), std::sin(bt));
  return unimodular_prefactor_ * field_phase * Complex(sum_re, sum_im) / (2.0 * pi());
}

ContinuumFidelity::Sample ContinuumFidelity::evaluate(Real time) {
  if (!std::isfinite(time)) throw InvalidParams("time: must be finite");

  Complex previous = amplitude_at_level(level(0), time);
  for (Index r = 1; r <= spec_.max_refinements; ++r) {
    const Level& lvl = level(r);
    const Complex current = amplitude_at_level(lvl, time);
    const Real scale =
        std::max({std::abs(current), std::abs(previous), kMagnitudeFloor});
    if (std::abs(current - previous) < spec_.refinement_tolerance * scale) {
      return Sample{make_transfer_result(time, current), lvl.nodes};
    }
    previous = current;
  }
  throw QuadratureNonConvergence(
      "fidelity integral did not converge after " + std::to_string(spec_.max_refinements) +
      " node doublings (t = " + std::to_string(time) + ")");
}

TransferResult fidelity_integral(const ChainParams& params, Real time,
                                 const QuadratureSpec& quad) {
  ContinuumFidelity evaluator(params, quad);
  return evaluator.evaluate(time).transfer;
}

}  // namespace spinwire
