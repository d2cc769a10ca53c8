#include "nsgap/cli/report.hpp"

#include <cstdio>
#include <ostream>

#include "nsgap/io.hpp"

namespace nsgap::cli {

namespace {

void flatten(std::ostream& out, const std::string& prefix, const json& j) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(out, prefix.empty() ? key : prefix + "." + key, value);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(out, prefix + "." + std::to_string(i), j[i]);
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out << prefix << ',' << s << '\n';
    } else {
      std::string quoted;
      for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      out << prefix << ",\"" << quoted << "\"\n";
    }
  } else {
    out << prefix << ',' << j.dump() << '\n';
  }
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json tagged(double value, std::string_view provenance) {
  return {{"value", io::number(value)}, {"provenance", provenance}};
}

json envelope(std::string_view command, std::uint64_t seed, const json& config, json result) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return {{"tool", "nsgap"},       {"version", NSGAP_VERSION}, {"command", command},
          {"seed", seed},          {"config", config},         {"config_hash", std::string("fnv1a64:") + hash},
          {"result", std::move(result)}};
}

void emit(std::ostream& out, const json& report, Format format) {
  if (format == Format::json) {
    out << report.dump(2) << '\n';
    return;
  }
  out << "key,value\n";
  flatten(out, "", report);
}

}  // namespace nsgap::cli
