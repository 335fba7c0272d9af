#include "gravdeco/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "gravdeco/scenario.hpp"

namespace gravdeco::cli {

namespace fs = std::filesystem;
using namespace gravdeco::scenario;

namespace {

std::string extension(OutputFormat f)
{
    return f == OutputFormat::Json ? ".json" : ".csv";
}

fs::path output_path(const std::string& config_path, const ScenarioConfig& cfg,
                     const std::optional<std::string>& out_dir)
{
    fs::path p = cfg.outputs.path.empty() ? fs::path(fs::path(config_path).stem().string() + extension(cfg.outputs.format))
                                          : fs::path(cfg.outputs.path);
    if (out_dir)
        p = fs::path(*out_dir) / p.filename();
    return p;
}

void write_result(const fs::path& path, const ScenarioConfig& cfg, const RunResult& result)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output file " + path.string());
    if (cfg.outputs.format == OutputFormat::Json)
        os << to_json(cfg, result).dump(2) << "\n";
    else
        write_csv(os, cfg, result);
}

std::optional<ScenarioConfig> load(const std::string& config_path, std::ostream& log, int& code)
{
    try {
        return parse(load_json_file(config_path));
    } catch (const ConfigError& e) {
        log << e.report().format();
        code = e.exit_code();
    }
    return std::nullopt;
}

void report_termination(const RunResult& result, std::ostream& log)
{
    for (const auto& w : result.warnings)
        log << "warning: " << w << "\n";
    const auto& traj = result.trajectory;
    if (!traj.completed())
        log << "terminated early (" << evolution::to_string(traj.termination) << ") at t="
            << format_double(traj.end_time) << ": " << traj.message << "\n";
}

} // namespace

std::optional<SweepRequest> parse_sweep_request(const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        return std::nullopt;
    SweepRequest req;
    req.axis = spec.substr(0, eq);
    std::string rest = spec.substr(eq + 1);
    if (rest.empty())
        return req;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            return std::nullopt;
        req.values.push_back(v);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return req;
}

int run(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log)
{
    int code = exit_code::ok;
    const auto cfg = load(config_path, log, code);
    if (!cfg)
        return code;
    RunResult result;
    try {
        result = simulate(*cfg);
    } catch (const DomainError& e) {
        log << "physics error: " << e.what() << "\n";
        return exit_code::physics;
    }
    report_termination(result, log);
    const fs::path path = output_path(config_path, *cfg, out_dir);
    write_result(path, *cfg, result);
    log << "wrote " << result.metrics.size() << " samples to " << path.string() << "\n";
    return result.exit_code();
}

int validate(const std::string& config_path, std::ostream& report)
{
    try {
        const ValidationReport r = scenario::validate(load_json_file(config_path));
        report << r.format();
        return r.exit_code();
    } catch (const ConfigError& e) {
        report << e.report().format();
        return e.exit_code();
    }
}

int sweep(const std::string& config_path, const std::string& spec, const std::optional<std::string>& out_dir,
          std::ostream& log)
{
    const auto req = parse_sweep_request(spec);
    if (!req) {
        log << "malformed --sweep argument '" << spec << "', expected axis=v1,v2,...\n";
        return exit_code::config;
    }
    if (!sweep_axis_pointer(req->axis)) {
        log << "unknown sweep axis '" << req->axis << "'\n";
        return exit_code::config;
    }
    json base;
    try {
        base = load_json_file(config_path);
    } catch (const ConfigError& e) {
        log << e.report().format();
        return e.exit_code();
    }

    const auto entries = scenario::sweep(base, req->axis, req->values);
    const std::string stem = fs::path(config_path).stem().string();
    const fs::path dir = out_dir ? fs::path(*out_dir) : fs::path(".");
    fs::create_directories(dir);

    int worst = exit_code::ok;
    std::ofstream summary(dir / (stem + "_sweep_" + req->axis + ".csv"), std::ios::binary);
    summary << "value,status,exit_code,regime,coherence_halflife,final_concurrence,revival_count,output\n";
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        if (e.exit_code != exit_code::ok && worst == exit_code::ok)
            worst = e.exit_code;
        if (!e.result) {
            log << req->axis << "=" << format_double(e.value) << ": " << e.error;
            summary << format_double(e.value) << ",error," << e.exit_code << ",,,,,\n";
            continue;
        }
        report_termination(*e.result, log);
        const fs::path file = dir / (stem + "_" + req->axis + "_" + std::to_string(k) + extension(e.config->outputs.format));
        write_result(file, *e.config, *e.result);
        const auto s = summarize(*e.result, e.config->outputs.revival_threshold);
        summary << format_double(e.value) << "," << evolution::to_string(e.result->trajectory.termination) << ","
                << e.exit_code << "," << e.result->regime << "," << format_double(s.coherence_halflife) << ","
                << format_double(s.final_concurrence) << "," << s.revival_count << "," << file.filename().string()
                << "\n";
    }
    log << "sweep over " << req->axis << ": " << entries.size() << " runs written to " << dir.string() << "\n";
    return worst;
}

} // namespace gravdeco::cli
