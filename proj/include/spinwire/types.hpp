#pragma once

#include <Eigen/Dense>

#include <complex>

namespace spinwire {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVector = Vector<Real>;
using RealMatrix = Matrix<Real>;
using ComplexVector = Vector<Complex>;
using ComplexMatrix = Matrix<Complex>;

/// Evenly spaced grid over [lo, hi], both endpoints included.
/// A single-point grid sits at lo.
inline RealVector linspace(Real lo, Real hi, Index count) {
  if (count == 1) return RealVector::Constant(1, lo);
  return RealVector::LinSpaced(count, lo, hi);
}

/// Max-norm deviation of a square matrix expression from its own adjoint.
template <typename Derived>
Real hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace spinwire
