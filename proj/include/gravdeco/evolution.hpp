// evolution.hpp: time stepping of the two-qubit density matrix under a
// (possibly time-dependent) linear generator.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gravdeco/channels.hpp"
#include "gravdeco/quantum_state.hpp"

namespace gravdeco::evolution {

enum class Method { RK4Fixed, RK45Adaptive };

std::string_view to_string(Method m);

struct IntegratorConfig {
    Method method{Method::RK4Fixed};
    double step{1e-3};      // fixed step, or initial step for the adaptive method
    double rel_tol{1e-8};
    double abs_tol{1e-10};
    double t_max{1.0};
    double sample_every{1e-2};
    bool hermitize{true};

    // Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

struct Generator {
    std::function<Matrix4c(double t, const Matrix4c& rho)> rhs;
    // Per-qubit rates reported alongside each sample (optional).
    std::function<channels::EffectiveRates(double t)> rates;
    // Coordinate time of a singularity in the generator; integration never
    // steps across it.
    std::optional<double> singular_time;
};

struct SampleDiagnostics {
    double trace_drift{0.0};
    double min_eigenvalue{0.0};
    double hermiticity_residual{0.0};
};

enum class Termination { Completed, Pole, StepUnderflow, InvariantViolation };

std::string_view to_string(Termination t);

// Below this minimum eigenvalue a state is beyond repair.
inline constexpr double kPositivityFailure = -1e-6;

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<double> rates_a;
    std::vector<double> rates_b;
    std::vector<SampleDiagnostics> diagnostics;

    Termination termination{Termination::Completed};
    double end_time{0.0}; // last coordinate time actually reached
    std::string message;
    long steps{0};

    std::size_t size() const { return times.size(); }
    bool completed() const { return termination == Termination::Completed; }
};

SampleDiagnostics diagnose(const Matrix4c& rho);

Trajectory evolve(const DensityMatrix& initial, const Generator& generator, const IntegratorConfig& config);

} // namespace gravdeco::evolution
