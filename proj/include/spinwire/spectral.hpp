#pragma once

#include <spinwire/model.hpp>

#include <utility>

namespace spinwire {

/// Real symmetric tridiagonal matrix produced by the gauge reduction:
/// diagonal -B_m, off-diagonals -|Gamma|.
struct RealTridiagonal {
  RealVector diagonal;
  RealVector off_diagonal;  // size N-1

  RealMatrix dense() const;
};

/// Diagonal unitary of unimodular phases, entry m = omega^{(m-1)/2} on the
/// branch fixed by EffectiveCoupling::omega_root(); satisfies H = P T P^dag.
struct GaugeTransform {
  ComplexVector phases;

  /// P u: componentwise product of phases with a reduced-problem vector.
  ComplexVector apply(const RealVector& u) const;
};

/// Reduce the Hermitian tridiagonal H to a real symmetric tridiagonal matrix
/// by a diagonal unitary. Throws ZeroCoupling for Gamma = 0 unless N = 1.
std::pair<RealTridiagonal, GaugeTransform> gauge_reduce(const SingleExcitationHamiltonian& h);

/// Exact spectral decomposition of the single-excitation Hamiltonian.
///
/// Eigenvalues are ascending. Column k of `eigenvectors` is the unit
/// eigenvector for eigenvalue k, rotated so that its first significant
/// component is real and positive.
///
/// The solver works on the offset-free reduced matrix: `reduced_eigenvalues`
/// are its eigenvalues and `eigenvalues = reduced_eigenvalues + diagonal_offset`
/// elementwise. For a uniform field the offset equals -B exactly, so the
/// reduced problem (and everything derived from it) is independent of B.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
  RealVector reduced_eigenvalues;
  Real diagonal_offset = 0.0;

  Index dimension() const { return eigenvalues.size(); }
};

SpectralDecomposition eigendecompose(const SingleExcitationHamiltonian& h);
SpectralDecomposition eigendecompose(const ChainParams& params);

/// Closed-form spectrum of the uniform chain: -(B + 2 |Gamma| cos(k pi / (N+1)))
/// for k = 1..N, sorted ascending. Throws NonUniformField otherwise.
RealVector uniform_spectrum(const ChainParams& params);

}  // namespace spinwire
