#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "gravdeco/channels.hpp"
#include "gravdeco/evolution.hpp"
#include "gravdeco/memory_kernel.hpp"
#include "gravdeco/metrics.hpp"
#include "gravdeco/oracle.hpp"
#include "gravdeco/quantum_state.hpp"
#include "gravdeco/scenario.hpp"
#include "gravdeco/spacetime.hpp"

namespace py = pybind11;
using namespace gravdeco;

namespace {

spacetime::RedshiftPair pair_of(double alpha, double beta)
{
    return spacetime::RedshiftPair::dimensionless(alpha, beta);
}

kernel::KernelVariant variant_of(const std::string& name)
{
    if (name == "paper")
        return kernel::KernelVariant::Paper;
    if (name == "literature")
        return kernel::KernelVariant::Literature;
    throw py::value_error("variant must be 'paper' or 'literature'");
}

Matrix4c checked_state(const Matrix4c& m)
{
    return DensityMatrix(m).matrix();
}

py::dict run_scenario(const std::string& config_text)
{
    const auto cfg = scenario::parse(scenario::json::parse(config_text));
    const auto result = scenario::simulate(cfg);
    const auto& traj = result.trajectory;

    std::vector<Matrix4c> states;
    states.reserve(traj.size());
    for (const auto& s : traj.states)
        states.push_back(s.matrix());

    py::dict metrics;
    auto column = [&](auto member) {
        std::vector<double> v;
        for (const auto& m : result.metrics)
            v.push_back(m.*member);
        return v;
    };
    using MS = metrics::MetricSample;
    metrics["concurrence"] = column(&MS::concurrence);
    metrics["negativity"] = column(&MS::negativity);
    metrics["l1_coherence"] = column(&MS::l1_coherence);
    metrics["purity"] = column(&MS::purity);
    metrics["fidelity_to_initial"] = column(&MS::fidelity_to_initial);
    metrics["purity_a"] = column(&MS::purity_a);
    metrics["purity_b"] = column(&MS::purity_b);
    metrics["pop_excited_a"] = column(&MS::pop_excited_a);
    metrics["pop_excited_b"] = column(&MS::pop_excited_b);

    py::dict out;
    out["times"] = traj.times;
    out["states"] = states;
    out["gamma_a"] = traj.rates_a;
    out["gamma_b"] = traj.rates_b;
    out["metrics"] = metrics;
    out["oracle_rho14"] = result.oracle_rho14;
    out["regime"] = result.regime;
    out["termination"] = std::string(evolution::to_string(traj.termination));
    out["end_time"] = traj.end_time;
    out["message"] = traj.message;
    out["exit_code"] = result.exit_code();
    out["alpha"] = cfg.redshift.alpha();
    out["beta"] = cfg.redshift.beta();
    return out;
}

std::vector<py::dict> validate_config(const std::string& config_text)
{
    scenario::json doc;
    try {
        doc = scenario::json::parse(config_text);
    } catch (const scenario::json::parse_error& e) {
        py::dict d;
        d["path"] = "";
        d["message"] = std::string("JSON parse error: ") + e.what();
        d["category"] = "schema";
        return {d};
    }
    std::vector<py::dict> issues;
    for (const auto& i : scenario::validate(doc).issues) {
        py::dict d;
        d["path"] = i.path;
        d["message"] = i.message;
        d["category"] = i.category == scenario::Category::Schema ? "schema" : "physics";
        issues.push_back(d);
    }
    return issues;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Two-qubit decoherence under gravitational redshift: core bindings";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);
    py::register_exception<kernel::PoleError>(m, "PoleError", PyExc_ArithmeticError);
    py::register_exception<scenario::ConfigError>(m, "ConfigError", PyExc_ValueError);

    // spacetime
    m.attr("G") = spacetime::kGravitationalConstant;
    m.attr("C") = spacetime::kSpeedOfLight;
    m.def("schwarzschild_radius", &spacetime::schwarzschild_radius, py::arg("mass"));
    m.def("redshift_factor", &spacetime::redshift_factor, py::arg("mass"), py::arg("r"));
    m.def("redshift_difference", &spacetime::redshift_difference, py::arg("mass"), py::arg("r_a"), py::arg("r_b"));
    m.def("proper_time", &spacetime::proper_time, py::arg("alpha"), py::arg("t"));
    m.def("phase_shift", &spacetime::phase_shift, py::arg("omega"), py::arg("alpha"), py::arg("beta"), py::arg("t"));

    // quantum state
    m.def("bell_state", [] { return bell_state().matrix(); });
    m.def("pauli", [](const std::string& which) {
        static const std::map<std::string, Pauli> names{{"X", Pauli::X},       {"Y", Pauli::Y},
                                                        {"Z", Pauli::Z},       {"I", Pauli::I},
                                                        {"PLUS", Pauli::Plus}, {"MINUS", Pauli::Minus}};
        const auto it = names.find(which);
        if (it == names.end())
            throw py::value_error("pauli: expected one of X, Y, Z, I, PLUS, MINUS");
        return pauli(it->second);
    }, py::arg("which"));
    m.def("kron", &kron, py::arg("a"), py::arg("b"));
    m.def("partial_trace", [](const Matrix4c& rho, const std::string& keep) {
        if (keep != "A" && keep != "B")
            throw py::value_error("keep must be 'A' or 'B'");
        return partial_trace(checked_state(rho), keep == "A" ? Qubit::A : Qubit::B);
    }, py::arg("rho"), py::arg("keep"));
    m.def("eigvals_hermitian", [](const Eigen::MatrixXcd& mat) { return eigvals_hermitian(mat); }, py::arg("m"));

    // channels
    m.def("thermal_occupation", &channels::thermal_occupation, py::arg("omega"), py::arg("temperature"));
    m.def("effective_rates", [](double gamma, double alpha, double beta) {
        const auto r = channels::effective_rates(gamma, pair_of(alpha, beta));
        return std::pair{r.gamma_a, r.gamma_b};
    }, py::arg("gamma"), py::arg("alpha"), py::arg("beta"));
    m.def("dephasing_rhs", [](const Matrix4c& rho, double ga, double gb) {
        return channels::dephasing_rhs(rho, {ga, gb});
    }, py::arg("rho"), py::arg("gamma_a"), py::arg("gamma_b"));
    m.def("amplitude_damping_rhs", [](const Matrix4c& rho, double ga, double gb, bool include_h, double omega) {
        return channels::amplitude_damping_rhs(rho, {ga, gb}, include_h, omega);
    }, py::arg("rho"), py::arg("gamma_a"), py::arg("gamma_b"), py::arg("include_h") = false, py::arg("omega") = 0.0);
    m.def("gad_rhs", [](const Matrix4c& rho, double ga, double gb, double na, double nb) {
        return channels::gad_rhs(rho, {ga, gb}, na, nb);
    }, py::arg("rho"), py::arg("gamma_a"), py::arg("gamma_b"), py::arg("n_th_a"), py::arg("n_th_b"));

    // memory kernel
    m.def("gamma_tilde", [](double gamma0, double lambda, double t, const std::string& variant) {
        return kernel::gamma_tilde({gamma0, lambda}, t, variant_of(variant));
    }, py::arg("gamma0"), py::arg("lambda_"), py::arg("t"), py::arg("variant") = "paper");
    m.def("kernel_regime", [](double gamma0, double lambda) {
        const auto r = kernel::classify({gamma0, lambda});
        return std::pair{std::string(kernel::to_string(r.kind)), r.d_value};
    }, py::arg("gamma0"), py::arg("lambda_"));
    m.def("first_pole", [](double gamma0, double lambda, const std::string& variant) {
        return kernel::first_pole({gamma0, lambda}, variant_of(variant));
    }, py::arg("gamma0"), py::arg("lambda_"), py::arg("variant") = "paper");
    m.def("decoherence_integral",
          [](double gamma0, double lambda, double alpha, double beta, double t, double step, const std::string& variant) {
              return kernel::decoherence_integral({gamma0, lambda}, pair_of(alpha, beta), t, step,
                                                  {variant_of(variant), false});
          },
          py::arg("gamma0"), py::arg("lambda_"), py::arg("alpha"), py::arg("beta"), py::arg("t"),
          py::arg("quadrature_step") = 0.01, py::arg("variant") = "paper");

    // oracle
    m.def("dephased_bell_state", [](double gamma, double alpha, double beta, double t) {
        return oracle::dephased_bell_state({gamma, alpha, beta}, t).matrix();
    }, py::arg("gamma"), py::arg("alpha"), py::arg("beta"), py::arg("t"));
    m.def("coherence_halflife", [](double gamma, double alpha, double beta) {
        return oracle::coherence_halflife({gamma, alpha, beta});
    }, py::arg("gamma"), py::arg("alpha"), py::arg("beta"));
    m.def("gad_steady_state_single", &oracle::gad_steady_state_single, py::arg("n_th"));

    // metrics
    m.def("concurrence", [](const Matrix4c& rho) { return metrics::concurrence(checked_state(rho)); }, py::arg("rho"));
    m.def("negativity", [](const Matrix4c& rho) { return metrics::negativity(checked_state(rho)); }, py::arg("rho"));
    m.def("l1_coherence", [](const Matrix4c& rho) { return metrics::l1_coherence(rho); }, py::arg("rho"));
    m.def("detect_revivals", [](const std::vector<double>& t, const std::vector<double>& v, double threshold) {
        std::vector<std::pair<double, double>> out;
        for (const auto& e : metrics::detect_revivals(t, v, threshold))
            out.emplace_back(e.t_min, e.rise());
        return out;
    }, py::arg("times"), py::arg("values"), py::arg("threshold") = metrics::kDefaultRevivalThreshold);

    // scenarios
    m.def("validate_config", &validate_config, py::arg("config_json"));
    m.def("run_scenario", &run_scenario, py::arg("config_json"));
}
