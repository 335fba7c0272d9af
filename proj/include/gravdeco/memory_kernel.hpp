// memory_kernel.hpp: time-dependent decay rate of the damped Jaynes-Cummings
// model, its redshift-scaled per-qubit rates and the accumulated decoherence
// integral.
//
//   gamma~(t) = 2 lambda gamma0 sinh(dt/2) / [ (d/2) cosh(dt/2) + lambda sinh(dt/2) ]
//   d = sqrt(lambda^2 - 2 lambda gamma0)
//
// The "literature" variant replaces the d/2 coefficient on cosh with d.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "gravdeco/channels.hpp"
#include "gravdeco/quantum_state.hpp"
#include "gravdeco/spacetime.hpp"

namespace gravdeco::kernel {

struct KernelParams {
    double gamma0{1.0}; // flat-spectrum rate, 1/s
    double lambda{1.0}; // reservoir spectral width, 1/s

    void validate() const;
};

enum class KernelVariant { Paper, Literature };
enum class RegimeKind { Monotonic, Oscillatory, Critical };

std::string_view to_string(KernelVariant v);
std::string_view to_string(RegimeKind r);

struct KernelRegime {
    RegimeKind kind{RegimeKind::Critical};
    // sqrt(lambda^2 - 2 lambda gamma0) when Monotonic, sqrt(2 lambda gamma0 - lambda^2)
    // when Oscillatory, 0 when Critical.
    double d_value{0.0};
};

struct KernelOptions {
    KernelVariant variant{KernelVariant::Paper};
    // Evaluate each qubit's kernel at its own proper time: alpha*gamma~(alpha t).
    bool dilate_argument{false};
};

class PoleError : public std::runtime_error {
public:
    PoleError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

KernelRegime classify(const KernelParams& params);

double gamma_tilde(const KernelParams& params, double t, KernelVariant variant = KernelVariant::Paper);

// First zero of the kernel denominator for t > 0, if any (oscillatory regime only).
std::optional<double> first_pole(const KernelParams& params, KernelVariant variant = KernelVariant::Paper);

// (alpha gamma~(t), beta gamma~(t)); entries may be negative.
channels::EffectiveRates scaled_rates(const KernelParams& params, const spacetime::RedshiftPair& redshift,
                                      double t, const KernelOptions& options = {});

// Earliest coordinate time at which either qubit's kernel hits a pole.
std::optional<double> first_coordinate_pole(const KernelParams& params,
                                            const spacetime::RedshiftPair& redshift,
                                            const KernelOptions& options = {});

struct QuadratureSettings {
    double abs_tol{1e-10};
    long max_intervals{1L << 20};
};

// Adaptive Simpson integral of rate over [0, t], seeded with panels of width
// at most quadrature_step.
double integrate_rate(const std::function<double(double)>& rate, double t, double quadrature_step,
                      const QuadratureSettings& settings = {});

// Gamma(t) = integral over [0, t] of (gamma_a + gamma_b). Throws PoleError if a
// kernel pole lies in [0, t].
double decoherence_integral(const KernelParams& params, const spacetime::RedshiftPair& redshift, double t,
                            double quadrature_step, const KernelOptions& options = {});

Matrix4c nonmarkov_dephasing_rhs(const Matrix4c& rho, const KernelParams& params,
                                 const spacetime::RedshiftPair& redshift, double t,
                                 const KernelOptions& options = {});

inline Matrix4c nonmarkov_dephasing_rhs(const DensityMatrix& rho, const KernelParams& params,
                                        const spacetime::RedshiftPair& redshift, double t,
                                        const KernelOptions& options = {})
{
    return nonmarkov_dephasing_rhs(rho.matrix(), params, redshift, t, options);
}

} // namespace gravdeco::kernel
