#pragma once

#include <spinwire/dynamics.hpp>

#include <cstdint>

namespace spinwire {

/// State over the full 2^N computational basis; bit (m-1) of the index is the
/// spin at site m (1 = up).
class FullState {
 public:
  explicit FullState(ComplexVector amplitudes);

  static FullState ground(Index n_sites);
  static FullState basis(Index n_sites, std::uint64_t index);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Index dimension() const { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
};

/// Dense 2^N x 2^N Hamiltonian assembled from the raising/lowering form with
/// sigma^± = (sigma^x ± i sigma^y)/2, so its single-excitation block equals
/// the tridiagonal matrix of the model module.
class FullHamiltonian {
 public:
  FullHamiltonian(Index n_sites, ComplexMatrix matrix);

  Index n_sites() const { return n_sites_; }
  Index dimension() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  Index n_sites_;
  ComplexMatrix matrix_;
};

/// Throws TooLarge for N > 14.
FullHamiltonian build_full(const ChainParams& params);

/// Dense Hermitian eigendecomposition of a FullHamiltonian, cached so that a
/// single build amortizes over many evolution times.
class FullPropagator {
 public:
  explicit FullPropagator(const FullHamiltonian& h);

  FullState evolve(const FullState& state, Real time, Real alpha) const;

  Index dimension() const { return eigenvalues_.size(); }

 private:
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

FullState full_evolve(const FullHamiltonian& h, const FullState& state, Real time, Real alpha);

/// Expectation of the total excitation number sum_j (sigma^z_j + 1)/2.
Real excitation_number(const FullState& state);

/// Basis index of the single-excitation state phi(site), site 1-based.
std::uint64_t single_excitation_index(Index site);

/// Full-space state with the given subspace amplitudes on the phi(m) basis
/// states and `ground_amplitude` on |0...0>.
FullState embed_single_excitation(Index n_sites, const ComplexVector& amplitudes,
                                  Complex ground_amplitude = Complex(0.0, 0.0));

/// Amplitudes on the phi(m) basis states, in site order (not renormalized).
ComplexVector single_excitation_amplitudes(const FullState& state);

}  // namespace spinwire
