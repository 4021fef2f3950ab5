#include <spinwire/io.hpp>

#include <spinwire/errors.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>

namespace spinwire {

std::string format_double(Real value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buffer, ptr);
}

std::string format_real_list(const std::vector<Real>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path temp = target.string() + ".tmp";
  {
    std::ofstream stream(temp, std::ios::binary | std::ios::trunc);
    if (!stream) throw Error("cannot open " + temp.string() + " for writing");
    stream << content;
    if (!stream.flush()) throw Error("write to " + temp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw Error("cannot rename " + temp.string() + " to " + target.string() + ": " +
                ec.message());
  }
}

}  // namespace spinwire
