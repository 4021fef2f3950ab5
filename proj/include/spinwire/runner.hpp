#pragma once

#include <spinwire/config.hpp>

namespace spinwire {

/// Execute a parsed configuration. Returns 0 on success and 3 when a
/// verification-style command (verify, bscan) ran but failed its assertion;
/// numerical and usage errors propagate as exceptions.
int run(const RunConfig& config);

/// Parse + run + map errors to exit codes: 0 success, 1 usage error,
/// 2 numerical failure, 3 verification failure. Diagnostics go to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace spinwire
