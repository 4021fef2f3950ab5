#include <spinwire/spectral.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace spinwire {

RealMatrix RealTridiagonal::dense() const {
  const Index n = diagonal.size();
  RealMatrix t = RealMatrix::Zero(n, n);
  for (Index m = 0; m < n; ++m) t(m, m) = diagonal[m];
  for (Index m = 0; m + 1 < n; ++m) {
    t(m, m + 1) = off_diagonal[m];
    t(m + 1, m) = off_diagonal[m];
  }
  return t;
}

ComplexVector GaugeTransform::apply(const RealVector& u) const {
  return phases.cwiseProduct(u.cast<Complex>());
}

std::pair<RealTridiagonal, GaugeTransform> gauge_reduce(const SingleExcitationHamiltonian& h) {
  const Index n = h.dimension();
  if (n > 1 && h.coupling().modulus() == 0.0) throw ZeroCoupling();

  GaugeTransform gauge;
  gauge.phases.resize(n);
  // phases as exact unimodular exp(i psi (m-1)); psi = -arg(Gamma), so that
  // conj(p_m) p_{m+1} (-Gamma) = -|Gamma|.
  const Real psi = (n > 1) ? h.coupling().phase_step() : 0.0;
  for (Index m = 0; m < n; ++m) {
    const Real a = psi * static_cast<Real>(m);
    gauge.phases[m] = Complex(std::cos(a), std::sin(a));
  }

  RealTridiagonal t;
  t.diagonal = h.diagonal();
  t.off_diagonal = RealVector::Constant(std::max<Index>(n - 1, 0), -h.coupling().modulus());
  return {std::move(t), std::move(gauge)};
}

namespace {

// Rotate each column so its first significant component (above 1e-6 of the
// column max) is real and positive.
void apply_phase_convention(ComplexMatrix& vectors) {
  for (Index k = 0; k < vectors.cols(); ++k) {
    auto col = vectors.col(k);
    const Real threshold = 1e-6 * col.cwiseAbs().maxCoeff();
    for (Index m = 0; m < col.size(); ++m) {
      const Real mag = std::abs(col[m]);
      if (mag > threshold) {
        col *= std::conj(col[m]) / mag;
        break;
      }
    }
  }
}

// Re-orthonormalize runs of near-degenerate eigenvalues (gap below
// 1e-12 * scale) by modified Gram-Schmidt within each run.
void orthonormalize_degenerate_blocks(const RealVector& eigenvalues, ComplexMatrix& vectors) {
  const Index n = eigenvalues.size();
  if (n < 2) return;
  const Real scale = std::max(eigenvalues.cwiseAbs().maxCoeff(), 1.0);
  const Real gap_tol = 1e-12 * scale;

  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && eigenvalues[stop] - eigenvalues[stop - 1] <= gap_tol) ++stop;
    if (stop - start > 1) {
      for (Index k = start; k < stop; ++k) {
        for (Index p = start; p < k; ++p) {
          const Complex overlap = vectors.col(p).dot(vectors.col(k));
          vectors.col(k) -= overlap * vectors.col(p);
        }
        vectors.col(k).normalize();
      }
    }
    start = stop;
  }
}

}  // namespace

SpectralDecomposition eigendecompose(const SingleExcitationHamiltonian& h) {
  const Index n = h.dimension();
  SpectralDecomposition out;

  if (n == 1) {
    out.diagonal_offset = h.diagonal()[0];
    out.reduced_eigenvalues = RealVector::Zero(1);
    out.eigenvalues = h.diagonal();
    out.eigenvectors = ComplexMatrix::Ones(1, 1);
    return out;
  }

  auto [tri, gauge] = gauge_reduce(h);

  // Solve the offset-free problem; for a uniform diagonal the shifted
  // diagonal is exactly zero, making the decomposition independent of B.
  out.diagonal_offset = h.uniform_diagonal() ? tri.diagonal[0] : tri.diagonal.mean();
  const RealVector shifted = tri.diagonal.array() - out.diagonal_offset;

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  solver.computeFromTridiagonal(shifted, tri.off_diagonal);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("symmetric tridiagonal eigensolver failed to converge");
  }

  out.reduced_eigenvalues = solver.eigenvalues();
  out.eigenvalues = out.reduced_eigenvalues.array() + out.diagonal_offset;
  out.eigenvectors = gauge.phases.asDiagonal() * solver.eigenvectors().cast<Complex>();

  orthonormalize_degenerate_blocks(out.reduced_eigenvalues, out.eigenvectors);
  apply_phase_convention(out.eigenvectors);
  return out;
}

SpectralDecomposition eigendecompose(const ChainParams& params) {
  return eigendecompose(build_single_excitation(params));
}

RealVector uniform_spectrum(const ChainParams& params) {
  const Real b = params.field().uniform_value();
  const Real gamma_mod = effective_coupling(params.j_coupling(), params.d_coupling()).modulus();
  const Index n = params.n_sites();

  RealVector values(n);
  const Real pi = std::acos(-1.0);
  for (Index k = 1; k <= n; ++k) {
    values[k - 1] = -(b + 2.0 * gamma_mod * std::cos(static_cast<Real>(k) * pi /
                                                     static_cast<Real>(n + 1)));
  }
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace spinwire
