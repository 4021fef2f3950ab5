#include <spinwire/model.hpp>

#include <cmath>
#include <string>

namespace spinwire {

namespace {

bool all_equal(const RealVector& v) {
  for (Index i = 1; i < v.size(); ++i) {
    if (v[i] != v[0]) return false;
  }
  return true;
}

}  // namespace

FieldProfile::FieldProfile(RealVector values) : values_(std::move(values)) {
  if (values_.size() < 1) {
    throw InvalidParams("field: profile must have at least one entry");
  }
  if (!values_.allFinite()) {
    throw InvalidParams("field: entries must be finite");
  }
  uniform_ = all_equal(values_);
}

FieldProfile FieldProfile::uniform(Index n_sites, Real b) {
  if (n_sites < 1) {
    throw InvalidParams("n_sites: must be >= 1, got " + std::to_string(n_sites));
  }
  return FieldProfile(RealVector::Constant(n_sites, b));
}

Real FieldProfile::uniform_value() const {
  if (!uniform_) throw NonUniformField();
  return values_[0];
}

ChainParams::ChainParams(Index n_sites, Real j_coupling, Real d_coupling, FieldProfile field,
                         Real alpha)
    : n_sites_(n_sites),
      j_coupling_(j_coupling),
      d_coupling_(d_coupling),
      field_(std::move(field)),
      alpha_(alpha) {
  if (n_sites_ < 1) {
    throw InvalidParams("n_sites: must be >= 1, got " + std::to_string(n_sites_));
  }
  if (!std::isfinite(j_coupling_)) throw InvalidParams("j_coupling: must be finite");
  if (!std::isfinite(d_coupling_)) throw InvalidParams("d_coupling: must be finite");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw InvalidParams("alpha: must be > 0, got " + std::to_string(alpha_));
  }
  if (field_.size() != n_sites_) {
    throw InvalidParams("field: length " + std::to_string(field_.size()) +
                        " does not match n_sites " + std::to_string(n_sites_));
  }
}

ChainParams ChainParams::uniform(Index n_sites, Real j_coupling, Real d_coupling, Real b,
                                 Real alpha) {
  return ChainParams(n_sites, j_coupling, d_coupling, FieldProfile::uniform(n_sites, b), alpha);
}

ChainParams ChainParams::with_d(Real d_coupling) const {
  return ChainParams(n_sites_, j_coupling_, d_coupling, field_, alpha_);
}

ChainParams ChainParams::with_uniform_b(Real b) const {
  return ChainParams(n_sites_, j_coupling_, d_coupling_, FieldProfile::uniform(n_sites_, b),
                     alpha_);
}

EffectiveCoupling::EffectiveCoupling(Real j_coupling, Real d_coupling)
    : gamma_(0.5 * j_coupling, 0.5 * d_coupling),
      modulus_(0.5 * std::hypot(j_coupling, d_coupling)) {}

Complex EffectiveCoupling::omega() const {
  if (modulus_ == 0.0) throw ZeroCoupling();
  return std::conj(gamma_) / gamma_;
}

Complex EffectiveCoupling::omega_root() const {
  if (modulus_ == 0.0) throw ZeroCoupling();
  return std::conj(gamma_) / modulus_;
}

Real EffectiveCoupling::phase_step() const {
  if (modulus_ == 0.0) throw ZeroCoupling();
  return -std::arg(gamma_);
}

EffectiveCoupling effective_coupling(Real j_coupling, Real d_coupling) {
  return EffectiveCoupling(j_coupling, d_coupling);
}

SingleExcitationHamiltonian::SingleExcitationHamiltonian(RealVector diagonal,
                                                         EffectiveCoupling coupling,
                                                         bool uniform_diagonal)
    : diagonal_(std::move(diagonal)),
      super_diagonal_(ComplexVector::Constant(std::max<Index>(diagonal_.size() - 1, 0),
                                              -coupling.gamma())),
      coupling_(coupling),
      uniform_diagonal_(uniform_diagonal) {}

ComplexMatrix SingleExcitationHamiltonian::dense() const {
  const Index n = dimension();
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (Index m = 0; m < n; ++m) h(m, m) = diagonal_[m];
  for (Index m = 0; m + 1 < n; ++m) {
    h(m, m + 1) = super_diagonal_[m];
    h(m + 1, m) = std::conj(super_diagonal_[m]);
  }
  return h;
}

SingleExcitationHamiltonian build_single_excitation(const ChainParams& params) {
  // Sign convention of the stored matrix: diagonal -B_m, super-diagonal -Gamma.
  return SingleExcitationHamiltonian(-params.field().values(),
                                     effective_coupling(params.j_coupling(), params.d_coupling()),
                                     params.field().is_uniform());
}

}  // namespace spinwire
