#pragma once

#include <spinwire/dynamics.hpp>
#include <spinwire/quadrature.hpp>

#include <vector>

namespace spinwire {

/// Composite Gauss-Legendre refinement control for the fidelity integral.
/// node_count is the initial total node count (rounded up to whole panels of
/// the internal base rule); refinement doubles the panel count until two
/// successive values agree to refinement_tolerance in relative terms.
struct QuadratureSpec {
  Index node_count = 64;
  Real refinement_tolerance = 1e-8;
  Index max_refinements = 20;

  void validate() const;
};

/// One continuum mode: theta, its energy E(theta) = -(B + 2 |Gamma| cos theta),
/// the componentwise ansatz amplitudes and the normalization beta.
struct ContinuumMode {
  Real theta = 0.0;
  Real energy = 0.0;
  ComplexVector amplitudes;
  Real beta = 0.0;
};

Real dispersion(const ChainParams& params, Real theta);

/// beta^2 = 1 / { (sin(N theta) + (|Gamma|/B) sin((N+1) theta))^2
///               + sum_{n=1}^{N-1} sin^2(n theta) }
/// (unimodular omega powers enter the norm with modulus one).
Real beta_squared(const ChainParams& params, Real theta);

ContinuumMode continuum_eigenvector(const ChainParams& params, Real theta);

/// Evaluates the continuum fidelity integral
///   F(t) = omega^{(N-1)/2} e^{i alpha B t} / (2 pi)
///          * Int_{-pi}^{pi} beta^2 sin(theta)
///            (sin(N theta) + (|Gamma|/B) sin((N+1) theta))
///            e^{2 i alpha t |Gamma| cos(theta)} d theta
/// by composite Gauss-Legendre with node doubling. The t-independent part of
/// the integrand is tabulated once per refinement level and reused across
/// times, so series evaluation costs one complex exponential per node.
///
/// Not safe for concurrent use: level tables are built lazily.
class ContinuumFidelity {
 public:
  struct Sample {
    TransferResult transfer;
    Index nodes_used = 0;
  };

  ContinuumFidelity(const ChainParams& params, QuadratureSpec spec = {});

  /// Throws QuadratureNonConvergence when max_refinements is exhausted.
  Sample evaluate(Real time);

 private:
  struct Level {
    Index nodes = 0;
    RealVector cos_theta;
    RealVector static_part;  // quadrature weight times the t-independent integrand
  };

  const Level& level(Index refinement);
  Complex amplitude_at_level(const Level& lvl, Real time) const;

  ChainParams params_;
  QuadratureSpec spec_;
  GaussLegendreRule base_rule_;
  Index initial_panels_;
  Real b_;
  Real gamma_mod_;
  Complex unimodular_prefactor_;  // omega^{(N-1)/2}
  std::vector<Level> levels_;
};

TransferResult fidelity_integral(const ChainParams& params, Real time,
                                 const QuadratureSpec& quad = {});

}  // namespace spinwire
