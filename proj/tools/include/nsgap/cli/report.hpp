#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace nsgap::cli {

using nlohmann::json;

enum class Format { json, csv };

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

// {"value": v, "provenance": p} with p one of exact, brute_force, heuristic,
// fitted, formula.
json tagged(double value, std::string_view provenance);

// Wraps a result with the tool version, command, seed, the config that
// produced it and the config's hash.
json envelope(std::string_view command, std::uint64_t seed, const json& config, json result);

// JSON pretty-printed, or "key,value" lines with dotted keys.
void emit(std::ostream& out, const json& report, Format format);

}  // namespace nsgap::cli
