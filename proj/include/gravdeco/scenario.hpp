// scenario.hpp: JSON scenario configs, validation, single runs, sweeps and
// the CSV/JSON trajectory writers used by the command-line tool.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gravdeco/channels.hpp"
#include "gravdeco/evolution.hpp"
#include "gravdeco/memory_kernel.hpp"
#include "gravdeco/metrics.hpp"
#include "gravdeco/spacetime.hpp"

namespace gravdeco::scenario {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int physics = 3;
inline constexpr int pole = 4;
inline constexpr int invariant = 5;
} // namespace exit_code

enum class Category { Schema, Physics };

struct Issue {
    std::string path; // JSON pointer into the config, e.g. "/channel/gamma"
    std::string message;
    Category category{Category::Schema};
};

struct ValidationReport {
    std::vector<Issue> issues;

    bool ok() const { return issues.empty(); }
    // 0 when valid, 2 for any schema issue, otherwise 3.
    int exit_code() const;
    std::string format() const;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(ValidationReport report);
    const ValidationReport& report() const { return report_; }
    int exit_code() const { return report_.exit_code(); }

private:
    ValidationReport report_;
};

enum class InitialState { Bell, Ground, Excited, Basis01, Basis10, MaximallyMixed };
enum class OutputFormat { Csv, Json };

struct KernelConfig {
    kernel::KernelParams params;
    kernel::KernelOptions options;
};

struct OutputConfig {
    std::string path;
    OutputFormat format{OutputFormat::Csv};
    bool include_oracle{false};
    bool include_state{false};
    double revival_threshold{metrics::kDefaultRevivalThreshold};
};

struct ScenarioConfig {
    std::optional<spacetime::GravitationalScenario> physical; // set in physical mode
    spacetime::RedshiftPair redshift;
    channels::ChannelSpec channel;
    bool nonmarkovian{false};
    std::optional<KernelConfig> kernel;
    InitialState initial{InitialState::Bell};
    evolution::IntegratorConfig integrator;
    OutputConfig outputs;
    json source;
};

// Parses text; a syntax error becomes a schema issue at path "".
json load_json_file(const std::string& path);

ValidationReport validate(const json& config);

// Throws ConfigError when validate() reports any issue.
ScenarioConfig parse(const json& config);

DensityMatrix make_initial_state(InitialState which);
evolution::Generator make_generator(const ScenarioConfig& config);

// "markovian" or the kernel regime name.
std::string regime_name(const ScenarioConfig& config);

// True for Markovian phase damping of the Bell state.
bool dephasing_oracle_applies(const ScenarioConfig& config);

struct RunResult {
    evolution::Trajectory trajectory;
    std::vector<metrics::MetricSample> metrics;
    std::vector<double> oracle_rho14; // empty unless the oracle applies
    std::string regime;
    std::vector<std::string> warnings;

    int exit_code() const;
};

RunResult simulate(const ScenarioConfig& config);

std::vector<std::string> csv_header(const OutputConfig& outputs, bool with_oracle);
void write_csv(std::ostream& os, const ScenarioConfig& config, const RunResult& result);
json to_json(const ScenarioConfig& config, const RunResult& result);

// Shortest representation that round-trips through strtod.
std::string format_double(double v);

struct SweepSummary {
    double coherence_halflife{0.0}; // NaN when l1 coherence never halves
    double final_concurrence{0.0};
    std::size_t revival_count{0};
};

SweepSummary summarize(const RunResult& result, double revival_threshold);

// Measured time for l1 coherence to fall to half its initial value
// (log-linear interpolation between samples); NaN if it never does.
double measured_halflife(const RunResult& result);

struct SweepEntry {
    double value{0.0};
    std::optional<ScenarioConfig> config;
    std::optional<RunResult> result;
    int exit_code{0};
    std::string error;
};

// JSON pointer for a sweep axis name ("beta", "lambda", "channel.gamma", ...);
// nullopt for an unknown axis.
std::optional<std::string> sweep_axis_pointer(const std::string& axis);

// Runs one independent scenario per value in parallel; results are in input
// order and a failing value does not abort its siblings. Throws ConfigError
// for an unknown axis.
std::vector<SweepEntry> sweep(const json& base, const std::string& axis, std::span<const double> values);

} // namespace gravdeco::scenario
