#pragma once

#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

namespace nsgap::cli {

// Runs a named suite ("acceptance" or "quick") and returns
// {"name", "criteria": [{"id", "name", "passed", "details"}], "passed"}.
// Contains no timings, so equal seeds give identical output.
nlohmann::json run_suite(std::string_view name, std::uint64_t seed);

}  // namespace nsgap::cli
