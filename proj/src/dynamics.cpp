#include <spinwire/dynamics.hpp>

#include <cmath>
#include <string>

namespace spinwire {

namespace {

void require_finite_time(Real time) {
  if (!std::isfinite(time)) throw InvalidParams("time: must be finite");
}

Complex phase_factor(Real angle) { return Complex(std::cos(angle), std::sin(angle)); }

}  // namespace

ExcitationState::ExcitationState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw InvalidParams("amplitudes: state must have at least one entry");
  }
  const Real norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw InvalidParams("amplitudes: state must be normalized, |norm - 1| = " +
                        std::to_string(std::abs(norm - 1.0)));
  }
}

ExcitationState ExcitationState::basis(Index n_sites, Index site) {
  if (site < 1 || site > n_sites) {
    throw InvalidParams("site: must lie in [1, n_sites], got " + std::to_string(site));
  }
  ComplexVector b = ComplexVector::Zero(n_sites);
  b[site - 1] = Complex(1.0, 0.0);
  return ExcitationState(std::move(b));
}

ExcitationState evolve(const SpectralDecomposition& decomp, const ExcitationState& initial,
                       Real time, Real alpha) {
  if (decomp.dimension() != initial.dimension()) {
    throw DimensionMismatch("evolve: decomposition dimension " +
                            std::to_string(decomp.dimension()) + " vs state dimension " +
                            std::to_string(initial.dimension()));
  }
  require_finite_time(time);

  ComplexVector modes = decomp.eigenvectors.adjoint() * initial.amplitudes();
  for (Index k = 0; k < modes.size(); ++k) {
    modes[k] *= phase_factor(-alpha * decomp.reduced_eigenvalues[k] * time);
  }
  ComplexVector evolved = decomp.eigenvectors * modes;
  // The uniform part of the diagonal contributes one global phase.
  evolved *= phase_factor(-alpha * decomp.diagonal_offset * time);
  return ExcitationState(std::move(evolved));
}

TransferResult transfer_amplitude(const SpectralDecomposition& decomp, Real time, Real alpha) {
  require_finite_time(time);
  const Index n = decomp.dimension();
  Complex sum{0.0, 0.0};
  for (Index k = 0; k < n; ++k) {
    const Complex weight = decomp.eigenvectors(n - 1, k) * std::conj(decomp.eigenvectors(0, k));
    sum += weight * phase_factor(-alpha * decomp.reduced_eigenvalues[k] * time);
  }
  return make_transfer_result(time, phase_factor(-alpha * decomp.diagonal_offset * time) * sum);
}

TransferResult transfer_amplitude(const ChainParams& params, Real time) {
  return transfer_amplitude(eigendecompose(params), time, params.alpha());
}

std::vector<TransferResult> fidelity_series(const SpectralDecomposition& decomp,
                                            const std::vector<Real>& times, Real alpha) {
  std::vector<TransferResult> results;
  results.reserve(times.size());
  for (const Real t : times) results.push_back(transfer_amplitude(decomp, t, alpha));
  return results;
}

std::vector<TransferResult> fidelity_series(const ChainParams& params,
                                            const std::vector<Real>& times) {
  return fidelity_series(eigendecompose(params), times, params.alpha());
}

}  // namespace spinwire
