// Brute-force full-Hilbert-space reference for the single-excitation modules.

#include <spinwire/oracle.hpp>

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <string>

namespace spinwire {

namespace {

constexpr Index kMaxSites = 14;

Complex phase_factor(Real angle) { return Complex(std::cos(angle), std::sin(angle)); }

}  // namespace

FullState::FullState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2 || (amplitudes_.size() & (amplitudes_.size() - 1)) != 0) {
    throw InvalidParams("amplitudes: dimension must be a power of two >= 2");
  }
  const Real norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw InvalidParams("amplitudes: state must be normalized, |norm - 1| = " +
                        std::to_string(std::abs(norm - 1.0)));
  }
}

FullState FullState::ground(Index n_sites) { return basis(n_sites, 0); }

FullState FullState::basis(Index n_sites, std::uint64_t index) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw TooLarge("n_sites: full-space states support 1..14 sites");
  }
  const Index dim = Index{1} << n_sites;
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw InvalidParams("index: outside the 2^N basis");
  }
  ComplexVector amps = ComplexVector::Zero(dim);
  amps[static_cast<Index>(index)] = Complex(1.0, 0.0);
  return FullState(std::move(amps));
}

FullHamiltonian::FullHamiltonian(Index n_sites, ComplexMatrix matrix)
    : n_sites_(n_sites), matrix_(std::move(matrix)) {}

FullHamiltonian build_full(const ChainParams& params) {
  const Index n = params.n_sites();
  if (n > kMaxSites) {
    throw TooLarge("n_sites: full-space build limited to N <= 14, got " + std::to_string(n));
  }
  const Index dim = Index{1} << n;
  const Complex gamma = effective_coupling(params.j_coupling(), params.d_coupling()).gamma();
  const RealVector& field = params.field().values();

  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (Index idx = 0; idx < dim; ++idx) {
    const auto bits = static_cast<std::uint64_t>(idx);

    // Field term: -(B_j/2)(sigma^z_j + 1) contributes -B_j per up spin.
    Real diag = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (bits >> j & 1u) diag -= field[j];
    }
    h(idx, idx) = diag;

    // Hopping: -Gamma sigma^+_j sigma^-_{j+1} moves an up spin from site j+1
    // to site j; -Gamma^* moves it the other way.
    for (Index j = 0; j + 1 < n; ++j) {
      const bool lo = bits >> j & 1u;
      const bool hi = bits >> (j + 1) & 1u;
      if (hi && !lo) {
        const Index target = idx - (Index{1} << (j + 1)) + (Index{1} << j);
        h(target, idx) += -gamma;
      } else if (lo && !hi) {
        const Index target = idx - (Index{1} << j) + (Index{1} << (j + 1));
        h(target, idx) += -std::conj(gamma);
      }
    }
  }
  return FullHamiltonian(n, std::move(h));
}

FullPropagator::FullPropagator(const FullHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("dense Hermitian eigensolver failed on the full Hamiltonian");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

FullState FullPropagator::evolve(const FullState& state, Real time, Real alpha) const {
  if (state.dimension() != dimension()) {
    throw DimensionMismatch("full_evolve: state dimension " + std::to_string(state.dimension()) +
                            " vs Hamiltonian dimension " + std::to_string(dimension()));
  }
  if (!std::isfinite(time)) throw InvalidParams("time: must be finite");

  ComplexVector modes = eigenvectors_.adjoint() * state.amplitudes();
  for (Index k = 0; k < modes.size(); ++k) {
    modes[k] *= phase_factor(-alpha * eigenvalues_[k] * time);
  }
  return FullState(eigenvectors_ * modes);
}

FullState full_evolve(const FullHamiltonian& h, const FullState& state, Real time, Real alpha) {
  return FullPropagator(h).evolve(state, time, alpha);
}

Real excitation_number(const FullState& state) {
  Real total = 0.0;
  const ComplexVector& amps = state.amplitudes();
  for (Index idx = 0; idx < amps.size(); ++idx) {
    const int ups = std::popcount(static_cast<std::uint64_t>(idx));
    total += static_cast<Real>(ups) * std::norm(amps[idx]);
  }
  return total;
}

std::uint64_t single_excitation_index(Index site) {
  if (site < 1) throw InvalidParams("site: must be >= 1");
  return std::uint64_t{1} << (site - 1);
}

FullState embed_single_excitation(Index n_sites, const ComplexVector& amplitudes,
                                  Complex ground_amplitude) {
  if (amplitudes.size() != n_sites) {
    throw DimensionMismatch("embed: amplitude count does not match n_sites");
  }
  if (n_sites > kMaxSites) throw TooLarge("n_sites: full-space states support 1..14 sites");
  ComplexVector full = ComplexVector::Zero(Index{1} << n_sites);
  full[0] = ground_amplitude;
  for (Index m = 1; m <= n_sites; ++m) {
    full[static_cast<Index>(single_excitation_index(m))] = amplitudes[m - 1];
  }
  return FullState(std::move(full));
}

ComplexVector single_excitation_amplitudes(const FullState& state) {
  Index n = 0;
  while ((Index{1} << n) < state.dimension()) ++n;
  ComplexVector out(n);
  for (Index m = 1; m <= n; ++m) {
    out[m - 1] = state.amplitudes()[static_cast<Index>(single_excitation_index(m))];
  }
  return out;
}

}  // namespace spinwire
