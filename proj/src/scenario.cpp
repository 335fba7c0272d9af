#include "gravdeco/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "gravdeco/oracle.hpp"

namespace gravdeco::scenario {

namespace {

const std::map<std::string, InitialState>& initial_state_names()
{
    static const std::map<std::string, InitialState> names{
        {"bell", InitialState::Bell},          {"ground", InitialState::Ground},
        {"00", InitialState::Ground},          {"01", InitialState::Basis01},
        {"10", InitialState::Basis10},         {"11", InitialState::Excited},
        {"excited", InitialState::Excited},    {"maximally_mixed", InitialState::MaximallyMixed},
    };
    return names;
}

const std::map<std::string, channels::ChannelKind>& channel_names()
{
    static const std::map<std::string, channels::ChannelKind> names{
        {"phase_damping", channels::ChannelKind::PhaseDamping},
        {"amplitude_damping", channels::ChannelKind::AmplitudeDamping},
        {"generalized_amplitude_damping", channels::ChannelKind::GeneralizedAmplitudeDamping},
    };
    return names;
}

// Collects issues while walking a config document.
class Checker {
public:
    explicit Checker(ValidationReport& report) : report_(report) {}

    void schema(const std::string& path, const std::string& msg) { report_.issues.push_back({path, msg, Category::Schema}); }
    void physics(const std::string& path, const std::string& msg) { report_.issues.push_back({path, msg, Category::Physics}); }

    bool object(const json& j, const std::string& path)
    {
        if (!j.is_object()) {
            schema(path, "expected an object");
            return false;
        }
        return true;
    }

    void known_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys)
    {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : j.items())
            if (!allowed.contains(k))
                schema(path + "/" + k, "unknown key");
    }

    // Returns the number if present and numeric; records an issue otherwise.
    std::optional<double> number(const json& parent, const std::string& path, const char* key, bool required)
    {
        if (!parent.contains(key)) {
            if (required)
                schema(path + "/" + key, "required number is missing");
            return std::nullopt;
        }
        const auto& v = parent.at(key);
        if (!v.is_number()) {
            schema(path + "/" + key, "expected a number");
            return std::nullopt;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            schema(path + "/" + key, "expected a finite number");
            return std::nullopt;
        }
        return d;
    }

    std::optional<bool> boolean(const json& parent, const std::string& path, const char* key)
    {
        if (!parent.contains(key))
            return std::nullopt;
        if (!parent.at(key).is_boolean()) {
            schema(path + "/" + key, "expected true or false");
            return std::nullopt;
        }
        return parent.at(key).get<bool>();
    }

    std::optional<std::string> string(const json& parent, const std::string& path, const char* key, bool required)
    {
        if (!parent.contains(key)) {
            if (required)
                schema(path + "/" + key, "required string is missing");
            return std::nullopt;
        }
        if (!parent.at(key).is_string()) {
            schema(path + "/" + key, "expected a string");
            return std::nullopt;
        }
        return parent.at(key).get<std::string>();
    }

    void require(bool ok, const std::string& path, const std::string& msg)
    {
        if (!ok)
            schema(path, msg);
    }

private:
    ValidationReport& report_;
};

double default_step(const ScenarioConfig& c)
{
    double ref = 0.0;
    const double amax = std::max(c.redshift.alpha(), c.redshift.beta());
    if (c.nonmarkovian && c.kernel)
        ref = std::max(c.kernel->params.gamma0, c.kernel->params.lambda) * amax;
    else {
        double n = 0.0;
        if (c.channel.kind == channels::ChannelKind::GeneralizedAmplitudeDamping)
            n = std::max(c.channel.n_th_a, c.channel.n_th_b);
        ref = c.channel.gamma * amax * (2.0 * n + 1.0);
    }
    if (c.channel.include_hamiltonian)
        ref = std::max(ref, c.channel.omega);
    if (ref <= 0.0)
        return c.integrator.sample_every;
    return std::min(1e-3 / ref, c.integrator.sample_every);
}

// Validates and, when build is non-null and no issue was found, fills it.
ValidationReport check(const json& root, ScenarioConfig* build)
{
    ValidationReport report;
    Checker ck(report);
    ScenarioConfig cfg;
    cfg.source = root;

    if (!ck.object(root, ""))
        return report;
    ck.known_keys(root, "", {"spacetime", "channel", "kernel", "initial_state", "integrator", "outputs"});

    // spacetime
    double alpha = 1.0, beta = 1.0;
    if (!root.contains("spacetime"))
        ck.schema("/spacetime", "required object is missing");
    else if (const auto& st = root["spacetime"]; ck.object(st, "/spacetime")) {
        ck.known_keys(st, "/spacetime", {"alpha", "beta", "mass_kg", "r_a_m", "r_b_m"});
        const bool dimless = st.contains("alpha") || st.contains("beta");
        const bool phys = st.contains("mass_kg") || st.contains("r_a_m") || st.contains("r_b_m");
        if (dimless && phys)
            ck.schema("/spacetime", "both spacetime forms present: give either {alpha, beta} or {mass_kg, r_a_m, r_b_m}");
        else if (!dimless && !phys)
            ck.schema("/spacetime", "give either {alpha, beta} or {mass_kg, r_a_m, r_b_m}");
        else if (dimless) {
            const auto a = ck.number(st, "/spacetime", "alpha", true);
            const auto b = ck.number(st, "/spacetime", "beta", true);
            if (a && !(*a > 0.0 && *a <= 1.0))
                ck.schema("/spacetime/alpha", "alpha must lie in (0, 1]");
            if (b && !(*b > 0.0 && *b <= 1.0))
                ck.schema("/spacetime/beta", "beta must lie in (0, 1]");
            if (a && b) {
                alpha = *a;
                beta = *b;
            }
        } else {
            const auto m = ck.number(st, "/spacetime", "mass_kg", true);
            const auto ra = ck.number(st, "/spacetime", "r_a_m", true);
            const auto rb = ck.number(st, "/spacetime", "r_b_m", true);
            if (m && *m < 0.0)
                ck.physics("/spacetime/mass_kg", "mass must be >= 0");
            else if (m) {
                const double rs = spacetime::schwarzschild_radius(*m);
                if (ra && !(*ra > rs))
                    ck.physics("/spacetime/r_a_m", "r_a is at or inside the Schwarzschild radius " + format_double(rs) + " m");
                if (rb && !(*rb > rs))
                    ck.physics("/spacetime/r_b_m", "r_b is at or inside the Schwarzschild radius " + format_double(rs) + " m");
                if (ra && rb && *ra > rs && *rb > rs)
                    cfg.physical = spacetime::GravitationalScenario{*m, *ra, *rb, 0.0};
            }
        }
    }

    // channel
    bool nonmarkovian = false;
    if (!root.contains("channel"))
        ck.schema("/channel", "required object is missing");
    else if (const auto& ch = root["channel"]; ck.object(ch, "/channel")) {
        ck.known_keys(ch, "/channel",
                      {"kind", "gamma", "include_hamiltonian", "omega", "n_th_a", "n_th_b", "nonmarkovian",
                       "redshift_hamiltonian"});
        if (const auto kind = ck.string(ch, "/channel", "kind", true)) {
            if (auto it = channel_names().find(*kind); it != channel_names().end())
                cfg.channel = channels::ChannelSpec::defaults_for(it->second);
            else
                ck.schema("/channel/kind",
                          "expected phase_damping, amplitude_damping or generalized_amplitude_damping");
        }
        nonmarkovian = ck.boolean(ch, "/channel", "nonmarkovian").value_or(false);
        if (nonmarkovian && cfg.channel.kind != channels::ChannelKind::PhaseDamping)
            ck.schema("/channel/nonmarkovian", "non-Markovian evolution is only defined for phase_damping");
        if (const auto g = ck.number(ch, "/channel", "gamma", !nonmarkovian)) {
            ck.require(*g >= 0.0, "/channel/gamma", "gamma must be >= 0");
            cfg.channel.gamma = *g;
        }
        if (const auto h = ck.boolean(ch, "/channel", "include_hamiltonian"))
            cfg.channel.include_hamiltonian = *h;
        if (const auto w = ck.number(ch, "/channel", "omega", false)) {
            ck.require(*w >= 0.0, "/channel/omega", "omega must be >= 0");
            cfg.channel.omega = *w;
        }
        for (const char* key : {"n_th_a", "n_th_b"}) {
            if (const auto n = ck.number(ch, "/channel", key, false)) {
                ck.require(*n >= 0.0, std::string("/channel/") + key, "thermal occupation must be >= 0");
                (std::string(key) == "n_th_a" ? cfg.channel.n_th_a : cfg.channel.n_th_b) = *n;
            }
        }
        if (const auto r = ck.boolean(ch, "/channel", "redshift_hamiltonian"))
            cfg.channel.redshift_hamiltonian = *r;
    }
    cfg.nonmarkovian = nonmarkovian;

    // kernel
    if (root.contains("kernel") && !nonmarkovian)
        ck.schema("/kernel", "kernel is only allowed when channel.kind is phase_damping with nonmarkovian = true");
    if (nonmarkovian && !root.contains("kernel"))
        ck.schema("/kernel", "kernel is required when channel.nonmarkovian is true");
    if (root.contains("kernel") && nonmarkovian) {
        const auto& k = root["kernel"];
        if (ck.object(k, "/kernel")) {
            ck.known_keys(k, "/kernel", {"gamma0", "lambda", "variant", "dilate_kernel_argument"});
            KernelConfig kc;
            if (const auto g0 = ck.number(k, "/kernel", "gamma0", true)) {
                ck.require(*g0 > 0.0, "/kernel/gamma0", "gamma0 must be > 0");
                kc.params.gamma0 = *g0;
            }
            if (const auto lam = ck.number(k, "/kernel", "lambda", true)) {
                ck.require(*lam > 0.0, "/kernel/lambda", "lambda must be > 0");
                kc.params.lambda = *lam;
            }
            if (const auto v = ck.string(k, "/kernel", "variant", false)) {
                if (*v == "paper")
                    kc.options.variant = kernel::KernelVariant::Paper;
                else if (*v == "literature")
                    kc.options.variant = kernel::KernelVariant::Literature;
                else
                    ck.schema("/kernel/variant", "expected paper or literature");
            }
            kc.options.dilate_argument = ck.boolean(k, "/kernel", "dilate_kernel_argument").value_or(false);
            cfg.kernel = kc;
        }
    }

    // initial state
    if (const auto s = ck.string(root, "", "initial_state", false)) {
        if (auto it = initial_state_names().find(*s); it != initial_state_names().end())
            cfg.initial = it->second;
        else
            ck.schema("/initial_state", "expected bell, ground, excited, 00, 01, 10, 11 or maximally_mixed");
    }

    // integrator
    std::optional<double> step;
    if (!root.contains("integrator"))
        ck.schema("/integrator", "required object is missing");
    else if (const auto& in = root["integrator"]; ck.object(in, "/integrator")) {
        ck.known_keys(in, "/integrator", {"method", "step", "rel_tol", "abs_tol", "t_max", "sample_every", "hermitize"});
        auto& ic = cfg.integrator;
        ic.method = nonmarkovian ? evolution::Method::RK45Adaptive : evolution::Method::RK4Fixed;
        if (const auto m = ck.string(in, "/integrator", "method", false)) {
            if (*m == "rk4")
                ic.method = evolution::Method::RK4Fixed;
            else if (*m == "rk45")
                ic.method = evolution::Method::RK45Adaptive;
            else
                ck.schema("/integrator/method", "expected rk4 or rk45");
        }
        if (const auto t = ck.number(in, "/integrator", "t_max", true)) {
            ck.require(*t > 0.0, "/integrator/t_max", "t_max must be > 0");
            ic.t_max = *t;
        }
        ic.sample_every = ic.t_max / 100.0;
        if (const auto s = ck.number(in, "/integrator", "sample_every", false)) {
            ck.require(*s > 0.0, "/integrator/sample_every", "sample_every must be > 0");
            ic.sample_every = *s;
        }
        if ((step = ck.number(in, "/integrator", "step", false))) {
            ck.require(*step > 0.0, "/integrator/step", "step must be > 0");
            ck.require(ic.sample_every >= *step, "/integrator/sample_every", "sample_every must be >= step");
        }
        for (const char* key : {"rel_tol", "abs_tol"}) {
            if (const auto v = ck.number(in, "/integrator", key, false)) {
                ck.require(*v > 0.0, std::string("/integrator/") + key, "tolerance must be > 0");
                (std::string(key) == "rel_tol" ? ic.rel_tol : ic.abs_tol) = *v;
            }
        }
        ic.hermitize = ck.boolean(in, "/integrator", "hermitize").value_or(true);
    }

    // outputs
    if (root.contains("outputs")) {
        const auto& out = root["outputs"];
        if (ck.object(out, "/outputs")) {
            ck.known_keys(out, "/outputs", {"path", "format", "include_oracle", "include_state", "revival_threshold"});
            auto& oc = cfg.outputs;
            if (const auto p = ck.string(out, "/outputs", "path", false))
                oc.path = *p;
            if (oc.path.ends_with(".json"))
                oc.format = OutputFormat::Json;
            if (const auto f = ck.string(out, "/outputs", "format", false)) {
                if (*f == "csv")
                    oc.format = OutputFormat::Csv;
                else if (*f == "json")
                    oc.format = OutputFormat::Json;
                else
                    ck.schema("/outputs/format", "expected csv or json");
            }
            oc.include_oracle = ck.boolean(out, "/outputs", "include_oracle").value_or(false);
            oc.include_state = ck.boolean(out, "/outputs", "include_state").value_or(false);
            if (const auto r = ck.number(out, "/outputs", "revival_threshold", false)) {
                ck.require(*r > 0.0, "/outputs/revival_threshold", "revival_threshold must be > 0");
                oc.revival_threshold = *r;
            }
        }
    }

    if (report.ok() && build) {
        if (cfg.physical) {
            cfg.physical->omega = cfg.channel.omega;
            cfg.redshift = spacetime::RedshiftPair::from_scenario(*cfg.physical);
        } else {
            cfg.redshift = spacetime::RedshiftPair::dimensionless(alpha, beta);
        }
        cfg.integrator.step = step.value_or(default_step(cfg));
        *build = std::move(cfg);
    }
    return report;
}

} // namespace

int ValidationReport::exit_code() const
{
    if (issues.empty())
        return exit_code::ok;
    const bool any_schema = std::any_of(issues.begin(), issues.end(),
                                        [](const Issue& i) { return i.category == Category::Schema; });
    return any_schema ? exit_code::config : exit_code::physics;
}

std::string ValidationReport::format() const
{
    std::ostringstream os;
    for (const auto& i : issues)
        os << (i.category == Category::Schema ? "schema" : "physics") << " error at "
           << (i.path.empty() ? "/" : i.path) << ": " << i.message << "\n";
    return os.str();
}

ConfigError::ConfigError(ValidationReport report)
    : std::runtime_error("invalid scenario config:\n" + report.format()), report_(std::move(report))
{
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        ValidationReport r;
        r.issues.push_back({"", "cannot read file '" + path + "'", Category::Schema});
        throw ConfigError(std::move(r));
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        ValidationReport r;
        r.issues.push_back({"", std::string("JSON parse error: ") + e.what(), Category::Schema});
        throw ConfigError(std::move(r));
    }
}

ValidationReport validate(const json& config)
{
    return check(config, nullptr);
}

ScenarioConfig parse(const json& config)
{
    ScenarioConfig cfg;
    ValidationReport report = check(config, &cfg);
    if (!report.ok())
        throw ConfigError(std::move(report));
    return cfg;
}

DensityMatrix make_initial_state(InitialState which)
{
    switch (which) {
    case InitialState::Bell: return bell_state();
    case InitialState::Ground: return DensityMatrix::basis_projector(0);
    case InitialState::Basis01: return DensityMatrix::basis_projector(1);
    case InitialState::Basis10: return DensityMatrix::basis_projector(2);
    case InitialState::Excited: return DensityMatrix::basis_projector(3);
    case InitialState::MaximallyMixed: return DensityMatrix::maximally_mixed();
    }
    return bell_state();
}

evolution::Generator make_generator(const ScenarioConfig& c)
{
    using channels::ChannelKind;
    evolution::Generator gen;
    const auto redshift = c.redshift;
    const auto spec = c.channel;

    std::optional<Matrix4c> hamiltonian;
    if (spec.include_hamiltonian) {
        const double wa = spec.redshift_hamiltonian ? spec.omega * redshift.alpha() : spec.omega;
        const double wb = spec.redshift_hamiltonian ? spec.omega * redshift.beta() : spec.omega;
        hamiltonian = channels::local_hamiltonian(wa, wb);
    }

    if (c.nonmarkovian) {
        const auto k = *c.kernel;
        gen.rates = [k, redshift](double t) { return kernel::scaled_rates(k.params, redshift, t, k.options); };
        gen.rhs = [k, redshift, hamiltonian](double t, const Matrix4c& rho) {
            Matrix4c out = kernel::nonmarkov_dephasing_rhs(rho, k.params, redshift, t, k.options);
            if (hamiltonian)
                out += channels::coherent_rhs(rho, *hamiltonian);
            return out;
        };
        gen.singular_time = kernel::first_coordinate_pole(k.params, redshift, k.options);
        return gen;
    }

    const auto rates = channels::effective_rates(spec.gamma, redshift);
    gen.rates = [rates](double) { return rates; };
    gen.rhs = [rates, spec, hamiltonian](double, const Matrix4c& rho) {
        Matrix4c out;
        switch (spec.kind) {
        case ChannelKind::PhaseDamping: out = channels::dephasing_rhs(rho, rates); break;
        case ChannelKind::AmplitudeDamping: out = channels::amplitude_damping_rhs(rho, rates, false, 0.0); break;
        case ChannelKind::GeneralizedAmplitudeDamping:
            out = channels::gad_rhs(rho, rates, spec.n_th_a, spec.n_th_b);
            break;
        }
        if (hamiltonian)
            out += channels::coherent_rhs(rho, *hamiltonian);
        return out;
    };
    return gen;
}

std::string regime_name(const ScenarioConfig& config)
{
    if (!config.nonmarkovian || !config.kernel)
        return "markovian";
    return std::string(kernel::to_string(kernel::classify(config.kernel->params).kind));
}

bool dephasing_oracle_applies(const ScenarioConfig& config)
{
    return config.channel.kind == channels::ChannelKind::PhaseDamping && !config.nonmarkovian &&
           config.initial == InitialState::Bell;
}

int RunResult::exit_code() const
{
    switch (trajectory.termination) {
    case evolution::Termination::Completed: return exit_code::ok;
    case evolution::Termination::Pole: return exit_code::pole;
    case evolution::Termination::StepUnderflow:
    case evolution::Termination::InvariantViolation: return exit_code::invariant;
    }
    return exit_code::invariant;
}

RunResult simulate(const ScenarioConfig& config)
{
    RunResult result;
    result.regime = regime_name(config);
    const DensityMatrix initial = make_initial_state(config.initial);
    result.trajectory = evolution::evolve(initial, make_generator(config), config.integrator);

    const auto& traj = result.trajectory;
    result.metrics.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k)
        result.metrics.push_back(metrics::measure(traj.times[k], traj.states[k].matrix(), initial.matrix()));

    if (config.outputs.include_oracle) {
        if (dephasing_oracle_applies(config)) {
            const oracle::DephasingOracle o{config.channel.gamma, config.redshift.alpha(), config.redshift.beta()};
            for (double t : traj.times)
                result.oracle_rho14.push_back(oracle::dephased_rho14(o, t));
        } else {
            result.warnings.push_back(
                "include_oracle: no closed-form oracle for this scenario (only Markovian phase damping of the "
                "Bell state); oracle columns omitted");
        }
    }
    return result;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> csv_header(const OutputConfig& outputs, bool with_oracle)
{
    std::vector<std::string> cols{"t",      "gamma_a", "gamma_b",       "concurrence",  "negativity",
                                  "l1_coherence", "purity", "pop_excited_a", "pop_excited_b"};
    if (outputs.include_state) {
        for (const char* part : {"re", "im"})
            for (int i = 1; i <= 4; ++i)
                for (int j = i; j <= 4; ++j)
                    cols.push_back(std::string("rho_") + part + "_" + std::to_string(i) + std::to_string(j));
    }
    if (with_oracle) {
        cols.emplace_back("oracle_rho14");
        cols.emplace_back("oracle_dev");
    }
    return cols;
}

namespace {

std::vector<double> row_values(const ScenarioConfig& config, const RunResult& r, std::size_t k)
{
    const auto& m = r.metrics[k];
    std::vector<double> row{m.t,           r.trajectory.rates_a[k], r.trajectory.rates_b[k],
                            m.concurrence, m.negativity,            m.l1_coherence,
                            m.purity,      m.pop_excited_a,         m.pop_excited_b};
    const Matrix4c& rho = r.trajectory.states[k].matrix();
    if (config.outputs.include_state) {
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                row.push_back(rho(i, j).real());
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                row.push_back(rho(i, j).imag());
    }
    if (!r.oracle_rho14.empty()) {
        row.push_back(r.oracle_rho14[k]);
        row.push_back(std::abs(std::abs(rho(0, 3)) - r.oracle_rho14[k]));
    }
    return row;
}

} // namespace

void write_csv(std::ostream& os, const ScenarioConfig& config, const RunResult& result)
{
    const auto header = csv_header(config.outputs, !result.oracle_rho14.empty());
    for (std::size_t c = 0; c < header.size(); ++c)
        os << (c ? "," : "") << header[c];
    os << "\n";
    for (std::size_t k = 0; k < result.metrics.size(); ++k) {
        const auto row = row_values(config, result, k);
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_double(row[c]);
        os << "\n";
    }
}

json to_json(const ScenarioConfig& config, const RunResult& result)
{
    const auto header = csv_header(config.outputs, !result.oracle_rho14.empty());
    json rows = json::array();
    for (std::size_t k = 0; k < result.metrics.size(); ++k) {
        const auto values = row_values(config, result, k);
        json row = json::object();
        for (std::size_t c = 0; c < header.size(); ++c)
            row[header[c]] = values[c];
        const auto& m = result.metrics[k];
        row["purity_a"] = m.purity_a;
        row["purity_b"] = m.purity_b;
        row["fidelity_to_initial"] = m.fidelity_to_initial;
        const auto& d = result.trajectory.diagnostics[k];
        row["trace_drift"] = d.trace_drift;
        row["min_eigenvalue"] = d.min_eigenvalue;
        row["hermiticity_residual"] = d.hermiticity_residual;
        rows.push_back(std::move(row));
    }
    const auto& traj = result.trajectory;
    json out;
    out["schema_version"] = kSchemaVersion;
    out["config"] = config.source;
    out["redshift"] = {{"alpha", config.redshift.alpha()},
                       {"beta", config.redshift.beta()},
                       {"alpha_minus_beta", config.redshift.difference()}};
    out["regime"] = result.regime;
    out["integrator"] = {{"method", std::string(evolution::to_string(config.integrator.method))},
                         {"step", config.integrator.step},
                         {"steps_taken", traj.steps}};
    out["termination"] = {{"status", std::string(evolution::to_string(traj.termination))},
                          {"end_time", traj.end_time},
                          {"message", traj.message}};
    out["columns"] = header;
    out["rows"] = std::move(rows);
    out["warnings"] = result.warnings;
    return out;
}

double measured_halflife(const RunResult& result)
{
    const auto& m = result.metrics;
    if (m.empty() || m.front().l1_coherence <= 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    const double half = 0.5 * m.front().l1_coherence;
    for (std::size_t k = 1; k < m.size(); ++k) {
        if (m[k].l1_coherence <= half) {
            const double y0 = m[k - 1].l1_coherence, y1 = m[k].l1_coherence;
            const double t0 = m[k - 1].t, t1 = m[k].t;
            if (y1 > 0.0 && y0 > 0.0 && y0 != y1)
                return t0 + (t1 - t0) * std::log(y0 / half) / std::log(y0 / y1);
            return t1;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

SweepSummary summarize(const RunResult& result, double revival_threshold)
{
    SweepSummary s;
    s.coherence_halflife = measured_halflife(result);
    std::vector<double> times, conc;
    for (const auto& m : result.metrics) {
        times.push_back(m.t);
        conc.push_back(m.concurrence);
    }
    s.final_concurrence = conc.empty() ? 0.0 : conc.back();
    s.revival_count = metrics::detect_revivals(times, conc, revival_threshold).size();
    return s;
}

std::optional<std::string> sweep_axis_pointer(const std::string& axis)
{
    static const std::map<std::string, std::string> axes{
        {"alpha", "/spacetime/alpha"},
        {"beta", "/spacetime/beta"},
        {"mass", "/spacetime/mass_kg"},
        {"mass_kg", "/spacetime/mass_kg"},
        {"r_a", "/spacetime/r_a_m"},
        {"r_a_m", "/spacetime/r_a_m"},
        {"r_b", "/spacetime/r_b_m"},
        {"r_b_m", "/spacetime/r_b_m"},
        {"gamma", "/channel/gamma"},
        {"omega", "/channel/omega"},
        {"n_th_a", "/channel/n_th_a"},
        {"n_th_b", "/channel/n_th_b"},
        {"gamma0", "/kernel/gamma0"},
        {"lambda", "/kernel/lambda"},
        {"t_max", "/integrator/t_max"},
        {"step", "/integrator/step"},
        {"sample_every", "/integrator/sample_every"},
    };
    if (auto it = axes.find(axis); it != axes.end())
        return it->second;
    // dotted form, e.g. "channel.gamma"
    std::string ptr = "/" + axis;
    std::replace(ptr.begin(), ptr.end(), '.', '/');
    for (const auto& [name, p] : axes)
        if (p == ptr)
            return p;
    return std::nullopt;
}

std::vector<SweepEntry> sweep(const json& base, const std::string& axis, std::span<const double> values)
{
    const auto pointer = sweep_axis_pointer(axis);
    if (!pointer) {
        ValidationReport r;
        r.issues.push_back({"", "unknown sweep axis '" + axis + "'", Category::Schema});
        throw ConfigError(std::move(r));
    }
    const json::json_pointer ptr(*pointer);

    std::vector<std::future<SweepEntry>> jobs;
    jobs.reserve(values.size());
    for (double v : values) {
        json doc = base;
        jobs.push_back(std::async(std::launch::async, [doc = std::move(doc), ptr, v]() mutable {
            SweepEntry e;
            e.value = v;
            try {
                doc[ptr] = v;
                e.config = parse(doc);
                e.result = simulate(*e.config);
                e.exit_code = e.result->exit_code();
                if (e.exit_code != exit_code::ok)
                    e.error = e.result->trajectory.message;
            } catch (const ConfigError& err) {
                e.exit_code = err.exit_code();
                e.error = err.report().format();
            } catch (const DomainError& err) {
                e.exit_code = exit_code::physics;
                e.error = err.what();
            } catch (const std::exception& err) {
                e.exit_code = exit_code::invariant;
                e.error = err.what();
            }
            return e;
        }));
    }
    std::vector<SweepEntry> out;
    out.reserve(jobs.size());
    for (auto& j : jobs)
        out.push_back(j.get());
    return out;
}

} // namespace gravdeco::scenario
