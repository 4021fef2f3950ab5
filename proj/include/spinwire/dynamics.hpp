#pragma once

#include <spinwire/spectral.hpp>

#include <vector>

namespace spinwire {

/// Normalized state in the single-excitation subspace; amplitudes[m-1] is the
/// amplitude on the basis state with the up-spin at site m.
class ExcitationState {
 public:
  explicit ExcitationState(ComplexVector amplitudes);

  /// Basis state with the excitation at `site` (1-based).
  static ExcitationState basis(Index n_sites, Index site);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Index dimension() const { return amplitudes_.size(); }
  Complex amplitude_at(Index site) const { return amplitudes_[site - 1]; }

 private:
  ComplexVector amplitudes_;
};

struct TransferResult {
  Real time = 0.0;
  Complex amplitude{0.0, 0.0};
  Real magnitude = 0.0;
};

inline TransferResult make_transfer_result(Real time, Complex amplitude) {
  return TransferResult{time, amplitude, std::abs(amplitude)};
}

/// Apply exp(-i alpha H t) through the spectral decomposition.
ExcitationState evolve(const SpectralDecomposition& decomp, const ExcitationState& initial,
                       Real time, Real alpha);

/// F(t) = <phi(N)| exp(-i alpha H t) |phi(1)>.
TransferResult transfer_amplitude(const SpectralDecomposition& decomp, Real time, Real alpha);
TransferResult transfer_amplitude(const ChainParams& params, Real time);

/// transfer_amplitude over a time grid, reusing one eigendecomposition.
std::vector<TransferResult> fidelity_series(const SpectralDecomposition& decomp,
                                            const std::vector<Real>& times, Real alpha);
std::vector<TransferResult> fidelity_series(const ChainParams& params,
                                            const std::vector<Real>& times);

}  // namespace spinwire
