#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace slinky::cli {

/// Full command-line entry point; returns the process exit code.
/// 0 success, 2 invalid input or failed validation, 3 numerical failure.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

/// One entry per invariant: {name, pass, value, threshold}.
nlohmann::json runValidation(std::uint64_t seed);

}  // namespace slinky::cli
