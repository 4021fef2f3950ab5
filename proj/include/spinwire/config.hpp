#pragma once

#include <spinwire/analytic.hpp>
#include <spinwire/model.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace spinwire {

enum class Command { spectrum, evolve, fidelity, sweep, optimize, bscan, verify };
enum class FidelityMethod { exact, analytic };
enum class OutputFormat { csv, json };

std::string to_string(Command command);
std::string to_string(FidelityMethod method);
std::string to_string(OutputFormat format);

/// Effective run configuration. Values resolve with precedence
/// flags > SPINWIRE_* environment > config file > defaults; the defaults for
/// the chain are N=150, J=1, D=14.455, B=500, alpha=1.
struct RunConfig {
  Command command = Command::fidelity;

  long n = 150;
  Real j = 1.0;
  Real d = 14.455;
  Real b = 500.0;
  std::vector<Real> field;  // empty = uniform b
  Real alpha = 1.0;

  Real t_min = 0.0;
  Real t_max = 200.0;
  long t_steps = 200;
  Real d_min = 0.0;
  Real d_max = 20.0;
  long d_steps = 200;

  FidelityMethod method = FidelityMethod::exact;
  long nodes = 64;
  Real quad_tol = 1e-8;
  long max_refine = 20;

  long site_in = 1;
  long site_out = 0;  // resolved to N during parsing when left unset

  long budget = 10000;

  std::vector<Real> b_list = {1.0, 10.0, 100.0, 1000.0};

  long n_max = 8;
  long sets = 20;
  long times = 10;
  Real tol = 1e-8;

  std::uint64_t seed = 1234;
  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty = stdout

  ChainParams chain_params() const;
  RealVector t_axis() const;
  RealVector d_axis() const;
  QuadratureSpec quadrature_spec() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Raised when --help was requested; `text` is the help screen.
struct HelpRequested {
  std::string text;
};

/// Parse command line (without argv[0]). Throws UsageError on unknown flags,
/// unknown config-file keys or unparsable values, InvalidParams when a merged
/// value violates a field invariant, HelpRequested for --help.
RunConfig parse_config(const std::vector<std::string>& args);

/// The effective key = value pairs echoed into output metadata for this
/// command, in a fixed order. Feeding them back as a config file reproduces
/// the same RunConfig.
std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& config);

}  // namespace spinwire
