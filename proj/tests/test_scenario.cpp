#include "doctest.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gravdeco/cli.hpp"
#include "gravdeco/oracle.hpp"
#include "gravdeco/scenario.hpp"

using namespace gravdeco;
using namespace gravdeco::scenario;
namespace fs = std::filesystem;

namespace {

json dephasing_config(double alpha = 1.0, double beta = 1.0)
{
    return json{{"spacetime", {{"alpha", alpha}, {"beta", beta}}},
                {"channel", {{"kind", "phase_damping"}, {"gamma", 1.0}}},
                {"integrator", {{"method", "rk4"}, {"step", 1e-3}, {"t_max", 2.0}, {"sample_every", 0.01}}},
                {"outputs", {{"include_oracle", true}}}};
}

json nonmarkov_config(double lambda)
{
    return json{{"spacetime", {{"alpha", 1.0}, {"beta", 0.9}}},
                {"channel", {{"kind", "phase_damping"}, {"nonmarkovian", true}}},
                {"kernel", {{"gamma0", 1.0}, {"lambda", lambda}}},
                {"integrator", {{"method", "rk45"}, {"t_max", 10.0}, {"sample_every", 0.01}}}};
}

json damping_config()
{
    return json{{"spacetime", {{"alpha", 1.0}, {"beta", 0.8}}},
                {"channel", {{"kind", "amplitude_damping"}, {"gamma", 1.0}, {"omega", 2.0}}},
                {"initial_state", "excited"},
                {"integrator", {{"t_max", 1.0}, {"sample_every", 0.1}}},
                {"outputs", {{"include_oracle", true}, {"include_state", true}}}};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        static std::atomic<int> counter{0};
        std::random_device rd;
        path = fs::temp_directory_path() /
               ("gravdeco_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const json& j) const
    {
        const fs::path p = path / name;
        std::ofstream(p) << j.dump(2);
        return p.string();
    }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool has_issue(const ValidationReport& r, const std::string& path, const std::string& fragment)
{
    for (const auto& i : r.issues)
        if (i.path == path && i.message.find(fragment) != std::string::npos)
            return true;
    return false;
}

std::string csv(const ScenarioConfig& cfg, const RunResult& r)
{
    std::ostringstream os;
    write_csv(os, cfg, r);
    return os.str();
}

} // namespace

TEST_CASE("valid configs pass validation")
{
    for (const json& j : {dephasing_config(), nonmarkov_config(0.3), damping_config()}) {
        const auto r = validate(j);
        CHECK(r.ok());
        CHECK(r.exit_code() == 0);
        CHECK(r.format().empty());
    }
}

TEST_CASE("validation diagnostics")
{
    json j = dephasing_config();
    j["spacetime"]["mass_kg"] = 5.9722e24;
    j["spacetime"]["r_a_m"] = 6.371e6;
    j["spacetime"]["r_b_m"] = 6.771e6;
    auto r = validate(j);
    CHECK(r.exit_code() == exit_code::config);
    CHECK(has_issue(r, "/spacetime", "both spacetime forms"));

    j = dephasing_config();
    j["channel"]["gamma"] = -1.0;
    r = validate(j);
    CHECK(r.exit_code() == exit_code::config);
    CHECK(has_issue(r, "/channel/gamma", "gamma must be >= 0"));

    j = dephasing_config();
    j["spacetime"] = {{"mass_kg", 1.989e30}, {"r_a_m", 1000.0}, {"r_b_m", 1e9}};
    r = validate(j);
    CHECK(r.exit_code() == exit_code::physics);
    CHECK(has_issue(r, "/spacetime/r_a_m", "Schwarzschild radius"));

    j = dephasing_config();
    j["channel"]["gama"] = 1.0;
    CHECK(has_issue(validate(j), "/channel/gama", "unknown key"));

    j = dephasing_config();
    j["kernel"] = {{"gamma0", 1.0}, {"lambda", 0.3}};
    CHECK(has_issue(validate(j), "/kernel", "only allowed"));

    j = nonmarkov_config(0.3);
    j.erase("kernel");
    CHECK(has_issue(validate(j), "/kernel", "required"));

    j = dephasing_config();
    j["integrator"]["sample_every"] = 1e-4;
    CHECK(has_issue(validate(j), "/integrator/sample_every", "sample_every must be >= step"));

    j = dephasing_config();
    j["spacetime"]["beta"] = 1.5;
    CHECK(has_issue(validate(j), "/spacetime/beta", "(0, 1]"));

    j = dephasing_config();
    j["channel"]["kind"] = "depolarizing";
    CHECK(has_issue(validate(j), "/channel/kind", ""));

    j = dephasing_config();
    j["integrator"].erase("t_max");
    CHECK(has_issue(validate(j), "/integrator/t_max", "missing"));

    // several issues are all reported
    j = dephasing_config();
    j["channel"]["gamma"] = -1.0;
    j["integrator"]["t_max"] = -2.0;
    CHECK(validate(j).issues.size() == 2);
}

TEST_CASE("validate and parse agree on every config")
{
    std::vector<json> configs{dephasing_config(), nonmarkov_config(0.3), damping_config()};
    json j = dephasing_config();
    j["channel"]["gamma"] = -1.0;
    configs.push_back(j);
    j = dephasing_config();
    j["spacetime"] = {{"mass_kg", 1.989e30}, {"r_a_m", 1000.0}, {"r_b_m", 1e9}};
    configs.push_back(j);
    j = dephasing_config();
    j["spacetime"] = {{"mass_kg", -1.0}, {"r_a_m", 1e7}, {"r_b_m", 1e9}};
    configs.push_back(j);
    j = dephasing_config();
    j["outputs"]["format"] = "xml";
    configs.push_back(j);
    configs.push_back(json::array());
    configs.push_back(json{{"spacetime", {{"alpha", 1.0}, {"beta", 1.0}}}});

    for (const auto& c : configs) {
        const auto report = validate(c);
        int parse_code = 0;
        try {
            parse(c);
        } catch (const ConfigError& e) {
            parse_code = e.exit_code();
        }
        CHECK(report.exit_code() == parse_code);
    }
}

TEST_CASE("defaults")
{
    json j = nonmarkov_config(0.3);
    j["integrator"].erase("sample_every");
    const auto cfg = parse(j);
    CHECK(cfg.integrator.method == evolution::Method::RK45Adaptive);
    CHECK(cfg.integrator.sample_every == doctest::Approx(0.1));
    CHECK(cfg.integrator.step <= cfg.integrator.sample_every);
    CHECK(cfg.kernel->options.variant == kernel::KernelVariant::Paper);
    CHECK_FALSE(cfg.kernel->options.dilate_argument);

    const auto d = parse(dephasing_config());
    CHECK_FALSE(d.channel.include_hamiltonian);
    const auto a = parse(damping_config());
    CHECK(a.channel.include_hamiltonian);
    CHECK(a.integrator.method == evolution::Method::RK4Fixed);
}

TEST_CASE("flat-spacetime dephasing run")
{
    const auto cfg = parse(dephasing_config());
    const auto r = simulate(cfg);
    REQUIRE(r.exit_code() == 0);
    CHECK(r.regime == "markovian");
    REQUIRE(r.trajectory.times[100] == doctest::Approx(1.0).epsilon(1e-14));
    const double rho14 = r.trajectory.states[100](0, 3).real();
    CHECK(rho14 == doctest::Approx(0.5 * std::exp(-4.0)).epsilon(1e-8));
    CHECK(std::abs(rho14 - 0.00915782) <= 5e-9);
    REQUIRE(r.oracle_rho14.size() == r.trajectory.size());
    CHECK(r.oracle_rho14[100] == doctest::Approx(0.5 * std::exp(-4.0)).epsilon(1e-15));
    CHECK(r.warnings.empty());
}

TEST_CASE("oracle columns are dropped with a warning where no closed form exists")
{
    const auto cfg = parse(damping_config());
    const auto r = simulate(cfg);
    REQUIRE(r.exit_code() == 0);
    CHECK(r.oracle_rho14.empty());
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("oracle") != std::string::npos);
    const std::string out = csv(cfg, r);
    CHECK(out.find("oracle_rho14") == std::string::npos);
    CHECK(out.find("rho_re_11") != std::string::npos);
}

TEST_CASE("CSV header")
{
    OutputConfig oc;
    auto h = csv_header(oc, false);
    CHECK(h == std::vector<std::string>{"t", "gamma_a", "gamma_b", "concurrence", "negativity", "l1_coherence",
                                        "purity", "pop_excited_a", "pop_excited_b"});
    oc.include_state = true;
    h = csv_header(oc, true);
    REQUIRE(h.size() == 9 + 20 + 2);
    CHECK(h[9] == "rho_re_11");
    CHECK(h[12] == "rho_re_14");
    CHECK(h[18] == "rho_re_44");
    CHECK(h[19] == "rho_im_11");
    CHECK(h[29] == "oracle_rho14");
    CHECK(h[30] == "oracle_dev");

    const auto cfg = parse(dephasing_config());
    const std::string out = csv(cfg, simulate(cfg));
    CHECK(out.substr(0, out.find('\n')) ==
          "t,gamma_a,gamma_b,concurrence,negativity,l1_coherence,purity,pop_excited_a,pop_excited_b,oracle_rho14,"
          "oracle_dev");
    CHECK(std::count(out.begin(), out.end(), '\n') == 202);
}

TEST_CASE("output is byte-identical across runs")
{
    for (const json& j : {dephasing_config(0.9, 0.7), damping_config(), nonmarkov_config(0.3)}) {
        const auto cfg = parse(j);
        const auto a = csv(cfg, simulate(cfg));
        const auto b = csv(cfg, simulate(cfg));
        CHECK(a == b);
        CHECK(to_json(cfg, simulate(cfg)).dump() == to_json(cfg, simulate(cfg)).dump());
    }
}

TEST_CASE("JSON output carries metadata")
{
    const auto cfg = parse(nonmarkov_config(0.3));
    const auto r = simulate(cfg);
    const json j = to_json(cfg, r);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("regime") == "oscillatory");
    CHECK(j.at("termination").at("status") == "pole");
    CHECK(j.at("config") == cfg.source);
    CHECK(j.at("rows").size() == r.trajectory.size());
    CHECK(j.at("rows")[0].at("concurrence") == doctest::Approx(1.0));
}

TEST_CASE("format_double round-trips")
{
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 1000; ++k) {
        const double v = u(rng) * std::pow(10.0, (k % 40) - 20);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("physical-mode scenario")
{
    json j = dephasing_config();
    j["spacetime"] = {{"mass_kg", 5.9722e24}, {"r_a_m", 6.371e6}, {"r_b_m", 6.771e6}};
    const auto cfg = parse(j);
    CHECK(cfg.redshift.alpha() < cfg.redshift.beta());
    CHECK(cfg.redshift.difference() < 0.0);
    const auto r = simulate(cfg);
    CHECK(r.exit_code() == 0);
    CHECK(r.trajectory.rates_a[0] < r.trajectory.rates_b[0]);
}

TEST_CASE("non-Markovian runs stop at the pole and keep the partial trajectory")
{
    const auto cfg = parse(nonmarkov_config(0.3));
    const auto r = simulate(cfg);
    CHECK(r.exit_code() == exit_code::pole);
    const double pole = *kernel::first_pole({1.0, 0.3});
    CHECK(r.trajectory.times.back() < pole);
    CHECK(r.trajectory.times.back() > pole - 0.011);
    CHECK(r.metrics.size() == r.trajectory.size());
    CHECK(regime_name(parse(nonmarkov_config(5.0))) == "monotonic");
    CHECK(regime_name(parse(nonmarkov_config(2.0))) == "critical");
}

TEST_CASE("sweep over beta")
{
    json base = dephasing_config();
    base["integrator"]["t_max"] = 1.0;
    const std::vector<double> betas{1.0, 0.8, 0.6};
    const auto entries = sweep(base, "beta", betas);
    REQUIRE(entries.size() == 3);
    double prev = 0.0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        REQUIRE(entries[k].result);
        CHECK(entries[k].value == betas[k]);
        const auto s = summarize(*entries[k].result, 1e-4);
        const double ref = oracle::coherence_halflife({1.0, 1.0, betas[k]});
        CHECK(s.coherence_halflife == doctest::Approx(ref).epsilon(1e-6));
        CHECK(s.coherence_halflife > prev);
        CHECK(s.revival_count == 0);
        prev = s.coherence_halflife;
    }
    CHECK(sweep(base, "beta", std::vector<double>{}).empty());
    CHECK(sweep(base, "spacetime.beta", betas).size() == 3);
}

TEST_CASE("sweep over lambda crosses the regime boundary")
{
    const std::vector<double> lambdas{0.3, 1.0, 2.0, 5.0, 10.0};
    const auto entries = sweep(nonmarkov_config(1.0), "lambda", lambdas);
    REQUIRE(entries.size() == lambdas.size());
    const char* regimes[] = {"oscillatory", "oscillatory", "critical", "monotonic", "monotonic"};
    for (std::size_t k = 0; k < entries.size(); ++k) {
        REQUIRE(entries[k].result);
        CHECK(entries[k].result->regime == regimes[k]);
        const auto s = summarize(*entries[k].result, 1e-4);
        if (lambdas[k] > 2.0) {
            CHECK(entries[k].exit_code == 0);
            CHECK(s.revival_count == 0);
        } else if (lambdas[k] < 2.0) {
            CHECK(entries[k].exit_code == exit_code::pole);
        }
    }
}

TEST_CASE("sweep isolates failing values")
{
    const std::vector<double> values{0.5, 1.5, 0.7};
    const auto entries = sweep(dephasing_config(), "beta", values);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].exit_code == 0);
    CHECK(entries[1].exit_code == exit_code::config);
    CHECK_FALSE(entries[1].result);
    CHECK(entries[1].error.find("/spacetime/beta") != std::string::npos);
    CHECK(entries[2].exit_code == 0);

    CHECK_THROWS_AS(sweep(dephasing_config(), "colour", values), ConfigError);
    CHECK_FALSE(sweep_axis_pointer("colour"));
    CHECK(*sweep_axis_pointer("lambda") == "/kernel/lambda");
    CHECK(*sweep_axis_pointer("channel.gamma") == "/channel/gamma");
}

TEST_CASE("parse_sweep_request")
{
    auto r = cli::parse_sweep_request("beta=1.0,0.8,0.6");
    REQUIRE(r);
    CHECK(r->axis == "beta");
    CHECK(r->values == std::vector<double>{1.0, 0.8, 0.6});
    r = cli::parse_sweep_request("lambda=");
    REQUIRE(r);
    CHECK(r->values.empty());
    CHECK_FALSE(cli::parse_sweep_request("beta"));
    CHECK_FALSE(cli::parse_sweep_request("=1,2"));
    CHECK_FALSE(cli::parse_sweep_request("beta=1,,2"));
    CHECK_FALSE(cli::parse_sweep_request("beta=1,x"));
}

TEST_CASE("cli run, validate and sweep")
{
    TempDir tmp;
    std::ostringstream log;

    SUBCASE("run writes the trajectory")
    {
        const auto path = tmp.write("flat.json", dephasing_config());
        CHECK(cli::run(path, tmp.path.string(), log) == 0);
        CHECK(fs::exists(tmp.path / "flat.csv"));
        CHECK(cli::validate(path, log) == 0);
    }
    SUBCASE("horizon violation exits 3 without output")
    {
        json j = dephasing_config();
        j["spacetime"] = {{"mass_kg", 1.989e30}, {"r_a_m", 1000.0}, {"r_b_m", 1e9}};
        const auto path = tmp.write("inside.json", j);
        CHECK(cli::run(path, tmp.path.string(), log) == exit_code::physics);
        CHECK_FALSE(fs::exists(tmp.path / "inside.csv"));
        std::ostringstream report;
        CHECK(cli::validate(path, report) == exit_code::physics);
        CHECK(report.str().find("/spacetime/r_a_m") != std::string::npos);
    }
    SUBCASE("pole exits 4 and keeps partial output")
    {
        json j = nonmarkov_config(0.3);
        j["outputs"] = {{"format", "json"}};
        const auto path = tmp.write("memory.json", j);
        CHECK(cli::run(path, (tmp.path / "out").string(), log) == exit_code::pole);
        const auto out = tmp.path / "out" / "memory.json";
        REQUIRE(fs::exists(out));
        CHECK(json::parse(slurp(out)).at("termination").at("status") == "pole");
    }
    SUBCASE("config errors exit 2")
    {
        std::ofstream(tmp.path / "broken.json") << "{ not json";
        CHECK(cli::run((tmp.path / "broken.json").string(), std::nullopt, log) == exit_code::config);
        CHECK(cli::validate((tmp.path / "missing.json").string(), log) == exit_code::config);
        const auto path = tmp.write("flat.json", dephasing_config());
        CHECK(cli::sweep(path, "colour=1,2", tmp.path.string(), log) == exit_code::config);
        CHECK(cli::sweep(path, "beta", tmp.path.string(), log) == exit_code::config);
    }
    SUBCASE("single-value sweep matches run")
    {
        const auto path = tmp.write("flat.json", dephasing_config(1.0, 0.8));
        CHECK(cli::run(path, (tmp.path / "run").string(), log) == 0);
        CHECK(cli::sweep(path, "beta=0.8", (tmp.path / "sweep").string(), log) == 0);
        CHECK(slurp(tmp.path / "run" / "flat.csv") == slurp(tmp.path / "sweep" / "flat_beta_0.csv"));
        const std::string summary = slurp(tmp.path / "sweep" / "flat_sweep_beta.csv");
        CHECK(summary.rfind("value,status,exit_code,regime,coherence_halflife,final_concurrence,revival_count,output\n",
                            0) == 0);
        CHECK(summary.find("0.8,completed,0,markovian,") != std::string::npos);
    }
    SUBCASE("sweep summary half-lives increase as beta decreases")
    {
        json j = dephasing_config();
        j["integrator"]["t_max"] = 1.0;
        const auto path = tmp.write("flat.json", j);
        CHECK(cli::sweep(path, "beta=1.0,0.8,0.6", tmp.path.string(), log) == 0);
        std::istringstream in(slurp(tmp.path / "flat_sweep_beta.csv"));
        std::string line;
        std::getline(in, line);
        std::vector<double> halflives;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            for (std::string c; std::getline(ss, c, ',');)
                cells.push_back(c);
            halflives.push_back(std::stod(cells.at(4)));
        }
        REQUIRE(halflives.size() == 3);
        CHECK(halflives[0] < halflives[1]);
        CHECK(halflives[1] < halflives[2]);
    }
}
