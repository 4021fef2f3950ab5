#pragma once

#include <spinwire/errors.hpp>
#include <spinwire/types.hpp>

namespace spinwire {

/// Per-site magnetic field B_j (energy units). The uniform flag is fixed at
/// construction and reflects exact equality of all entries.
class FieldProfile {
 public:
  explicit FieldProfile(RealVector values);

  static FieldProfile uniform(Index n_sites, Real b);

  const RealVector& values() const { return values_; }
  Index size() const { return values_.size(); }
  bool is_uniform() const { return uniform_; }

  /// The common field value; throws NonUniformField otherwise.
  Real uniform_value() const;

  Real max_abs() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }

  friend bool operator==(const FieldProfile& a, const FieldProfile& b) {
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

 private:
  RealVector values_;
  bool uniform_;
};

/// Chain parameters: length N, exchange J, DM strength D, field profile and
/// the time-scale factor alpha used in the evolution phase exp(-i alpha H t).
class ChainParams {
 public:
  ChainParams(Index n_sites, Real j_coupling, Real d_coupling, FieldProfile field,
              Real alpha = 1.0);

  static ChainParams uniform(Index n_sites, Real j_coupling, Real d_coupling, Real b,
                             Real alpha = 1.0);

  Index n_sites() const { return n_sites_; }
  Real j_coupling() const { return j_coupling_; }
  Real d_coupling() const { return d_coupling_; }
  const FieldProfile& field() const { return field_; }
  Real alpha() const { return alpha_; }

  ChainParams with_d(Real d_coupling) const;
  ChainParams with_uniform_b(Real b) const;

  friend bool operator==(const ChainParams& a, const ChainParams& b) {
    return a.n_sites_ == b.n_sites_ && a.j_coupling_ == b.j_coupling_ &&
           a.d_coupling_ == b.d_coupling_ && a.field_ == b.field_ && a.alpha_ == b.alpha_;
  }

 private:
  Index n_sites_;
  Real j_coupling_;
  Real d_coupling_;
  FieldProfile field_;
  Real alpha_;
};

/// Effective complex hopping Gamma = (J + iD)/2 and derived quantities.
/// omega() and omega_root() are undefined (throw ZeroCoupling) at Gamma = 0.
class EffectiveCoupling {
 public:
  EffectiveCoupling(Real j_coupling, Real d_coupling);

  Complex gamma() const { return gamma_; }
  Real modulus() const { return modulus_; }

  /// omega = Gamma*/Gamma, unit modulus.
  Complex omega() const;

  /// The square root of omega on the branch with omega_root() * gamma = |gamma|,
  /// i.e. exp(-i arg Gamma). This is the branch under which the last component
  /// of the continuum eigenvector reduces to sin(N theta) + (|Gamma|/B) sin((N+1) theta)
  /// times a unimodular factor.
  Complex omega_root() const;

  /// arg(omega_root()), the phase step of the gauge transform.
  Real phase_step() const;

 private:
  Complex gamma_;
  Real modulus_;
};

EffectiveCoupling effective_coupling(Real j_coupling, Real d_coupling);

/// The N x N single-excitation Hamiltonian: diagonal -B_m, super-diagonal
/// -Gamma, sub-diagonal -Gamma*. Hermitian by construction.
class SingleExcitationHamiltonian {
 public:
  SingleExcitationHamiltonian(RealVector diagonal, EffectiveCoupling coupling,
                              bool uniform_diagonal);

  Index dimension() const { return diagonal_.size(); }
  const RealVector& diagonal() const { return diagonal_; }
  const ComplexVector& super_diagonal() const { return super_diagonal_; }
  ComplexVector sub_diagonal() const { return super_diagonal_.conjugate(); }
  const EffectiveCoupling& coupling() const { return coupling_; }
  bool uniform_diagonal() const { return uniform_diagonal_; }

  ComplexMatrix dense() const;

 private:
  RealVector diagonal_;
  ComplexVector super_diagonal_;
  EffectiveCoupling coupling_;
  bool uniform_diagonal_;
};

SingleExcitationHamiltonian build_single_excitation(const ChainParams& params);

}  // namespace spinwire
