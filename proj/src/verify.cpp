#include <spinwire/verify.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace spinwire {

namespace {

constexpr Real kConservationTol = 1e-10;

ComplexVector random_unit_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<Real> gauss(0.0, 1.0);
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  v /= v.norm();
  return v;
}

}  // namespace

std::vector<ChainParams> random_verification_params(Index count, Index n_min, Index n_max,
                                                    std::uint64_t seed) {
  if (n_min < 2 || n_max < n_min) {
    throw InvalidParams("n_min/n_max: need 2 <= n_min <= n_max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> coupling(-5.0, 5.0);
  std::uniform_real_distribution<Real> field(0.0, 100.0);
  std::uniform_real_distribution<Real> alpha(0.5, 2.0);

  std::vector<ChainParams> cases;
  cases.reserve(count);
  for (Index i = 0; i < count; ++i) {
    Real j = coupling(rng);
    Real d = coupling(rng);
    while (j == 0.0 && d == 0.0) {
      j = coupling(rng);
      d = coupling(rng);
    }
    const Index n = n_min + i % (n_max - n_min + 1);
    cases.push_back(ChainParams::uniform(n, j, d, field(rng), alpha(rng)));
  }
  return cases;
}

VerifyReport verify_equivalence(const std::vector<ChainParams>& cases, Index times_per_case,
                                std::uint64_t seed, Real tolerance) {
  if (times_per_case < 1) throw InvalidParams("times_per_case: must be >= 1");
  if (!(tolerance > 0.0)) throw InvalidParams("tolerance: must be > 0");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> time_draw(0.0, 10.0);
  std::uniform_real_distribution<Real> unit(0.0, 1.0);

  VerifyReport report;
  report.seed = seed;
  report.tolerance = tolerance;
  report.times_per_case = times_per_case;

  for (const ChainParams& params : cases) {
    const Index n = params.n_sites();
    const SpectralDecomposition decomp = eigendecompose(params);
    const FullHamiltonian full = build_full(params);
    const FullPropagator propagator(full);

    VerifyCase result{params};

    const FullState sender = FullState::basis(n, single_excitation_index(1));
    const ComplexVector random_sub = random_unit_vector(n, rng);
    const Real ground_weight = 0.3 + 0.5 * unit(rng);
    const Complex ground_amp(std::sqrt(ground_weight), 0.0);
    const Real sub_weight = std::sqrt(1.0 - ground_weight);
    const FullState superposition =
        embed_single_excitation(n, sub_weight * random_sub, ground_amp);

    for (Index k = 0; k < times_per_case; ++k) {
      const Real t = time_draw(rng);

      // Endpoint transfer amplitude, both routes.
      const FullState evolved_sender = propagator.evolve(sender, t, params.alpha());
      const Complex f_full =
          evolved_sender.amplitudes()[static_cast<Index>(single_excitation_index(n))];
      const Complex f_sub = transfer_amplitude(decomp, t, params.alpha()).amplitude;
      result.transfer_deviation = std::max(result.transfer_deviation, std::abs(f_full - f_sub));

      // Componentwise evolution of a random single-excitation state.
      const FullState full_random =
          propagator.evolve(embed_single_excitation(n, random_sub), t, params.alpha());
      const ExcitationState sub_random =
          evolve(decomp, ExcitationState(random_sub), t, params.alpha());
      const Real state_dev = (single_excitation_amplitudes(full_random) -
                              sub_random.amplitudes())
                                 .cwiseAbs()
                                 .maxCoeff();
      result.state_deviation = std::max(result.state_deviation, state_dev);

      result.norm_deviation =
          std::max(result.norm_deviation, std::abs(full_random.amplitudes().norm() - 1.0));
      result.excitation_drift =
          std::max(result.excitation_drift, std::abs(excitation_number(full_random) - 1.0));

      const FullState evolved_superposition = propagator.evolve(superposition, t, params.alpha());
      const Real ground_drift =
          std::abs(std::abs(evolved_superposition.amplitudes()[0]) - std::abs(ground_amp));
      result.ground_amplitude_drift = std::max(result.ground_amplitude_drift, ground_drift);
    }

    report.max_transfer_deviation =
        std::max(report.max_transfer_deviation, result.transfer_deviation);
    report.max_state_deviation = std::max(report.max_state_deviation, result.state_deviation);
    report.max_norm_deviation = std::max(report.max_norm_deviation, result.norm_deviation);
    report.max_excitation_drift =
        std::max(report.max_excitation_drift, result.excitation_drift);
    report.max_ground_amplitude_drift =
        std::max(report.max_ground_amplitude_drift, result.ground_amplitude_drift);
    report.cases.push_back(std::move(result));
  }

  report.pass = report.max_transfer_deviation < tolerance &&
                report.max_state_deviation < tolerance &&
                report.max_norm_deviation < kConservationTol &&
                report.max_excitation_drift < kConservationTol &&
                report.max_ground_amplitude_drift < kConservationTol;
  return report;
}

}  // namespace spinwire
