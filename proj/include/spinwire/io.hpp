#pragma once

#include <spinwire/types.hpp>

#include <string>
#include <vector>

namespace spinwire {

/// Shortest decimal form of a double that round-trips exactly.
std::string format_double(Real value);

std::string format_real_list(const std::vector<Real>& values);

/// Write content to path via a temp file plus rename in the same directory.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace spinwire
