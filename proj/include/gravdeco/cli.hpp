// cli.hpp: the run / validate / sweep commands behind the gravdeco tool.
// Each returns the process exit code; data goes to files, messages to log.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gravdeco::cli {

inline constexpr const char* kVersion = "1.0.0";

int run(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log);

int validate(const std::string& config_path, std::ostream& report);

// spec has the form "axis=v1,v2,...".
int sweep(const std::string& config_path, const std::string& spec, const std::optional<std::string>& out_dir,
          std::ostream& log);

// Parses "axis=v1,v2,..."; returns nullopt on malformed input.
struct SweepRequest {
    std::string axis;
    std::vector<double> values;
};
std::optional<SweepRequest> parse_sweep_request(const std::string& spec);

} // namespace gravdeco::cli
