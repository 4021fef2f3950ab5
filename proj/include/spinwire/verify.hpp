#pragma once

#include <spinwire/oracle.hpp>

#include <cstdint>
#include <vector>

namespace spinwire {

/// Deviations between the full 2^N evolution and the single-excitation
/// modules for one parameter set, maximized over the sampled times.
struct VerifyCase {
  ChainParams params;
  Real transfer_deviation = 0.0;     // endpoint amplitude, full vs spectral
  Real state_deviation = 0.0;        // componentwise, random initial states
  Real norm_deviation = 0.0;         // |norm - 1| after full evolution
  Real excitation_drift = 0.0;       // excitation-number conservation
  Real ground_amplitude_drift = 0.0; // | |a(t)| - |a(0)| | for a|0..0> + b|phi(1)>
};

struct VerifyReport {
  std::uint64_t seed = 0;
  Real tolerance = 0.0;
  Index times_per_case = 0;
  std::vector<VerifyCase> cases;

  Real max_transfer_deviation = 0.0;
  Real max_state_deviation = 0.0;
  Real max_norm_deviation = 0.0;
  Real max_excitation_drift = 0.0;
  Real max_ground_amplitude_drift = 0.0;
  bool pass = false;
};

/// Random parameter sets with J, D in [-5, 5], uniform B in [0, 100],
/// alpha in [0.5, 2] and N cycling through [n_min, n_max].
std::vector<ChainParams> random_verification_params(Index count, Index n_min, Index n_max,
                                                    std::uint64_t seed);

/// Cross-module equivalence suite: evolves basis and random states through
/// both the full-space oracle and the spectral path, at `times_per_case`
/// random times in [0, 10] per case. Amplitude deviations must stay below
/// `tolerance`; conservation checks use a fixed 1e-10.
VerifyReport verify_equivalence(const std::vector<ChainParams>& cases, Index times_per_case,
                                std::uint64_t seed, Real tolerance);

}  // namespace spinwire
