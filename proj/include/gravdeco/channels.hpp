// channels.hpp: master-equation generators for local phase damping,
// amplitude damping and generalized amplitude damping with redshift-scaled
// per-qubit rates.

#pragma once

#include <string_view>

#include "gravdeco/quantum_state.hpp"
#include "gravdeco/spacetime.hpp"

namespace gravdeco::channels {

inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J/K

enum class ChannelKind { PhaseDamping, AmplitudeDamping, GeneralizedAmplitudeDamping };

std::string_view to_string(ChannelKind kind);

struct ChannelSpec {
    ChannelKind kind{ChannelKind::PhaseDamping};
    double gamma{0.0};             // proper-time base rate, 1/s
    bool include_hamiltonian{false};
    double omega{0.0};             // rad/s
    double n_th_a{0.0};
    double n_th_b{0.0};
    // Use alpha*omega and beta*omega as the local qubit frequencies.
    bool redshift_hamiltonian{false};

    // Defaults: no coherent term for dephasing, coherent term on for the
    // damping channels.
    static ChannelSpec defaults_for(ChannelKind kind);

    // Throws DomainError on a negative rate, frequency or occupation.
    void validate() const;
};

struct EffectiveRates {
    double gamma_a{0.0};
    double gamma_b{0.0};
};

inline EffectiveRates effective_rates(double gamma, const spacetime::RedshiftPair& redshift)
{
    return {gamma * redshift.alpha(), gamma * redshift.beta()};
}

// Bose-Einstein occupation 1/(exp(hbar omega / k_B T) - 1).
double thermal_occupation(double omega, double temperature);

// H = (omega_a/2) sigma_z (x) I + (omega_b/2) I (x) sigma_z
Matrix4c local_hamiltonian(double omega_a, double omega_b);

// -i[H, rho]
Matrix4c coherent_rhs(const Matrix4c& rho, const Matrix4c& hamiltonian);

// gamma_a [(Z(x)I) rho (Z(x)I) - rho] + gamma_b [(I(x)Z) rho (I(x)Z) - rho]
Matrix4c dephasing_rhs(const Matrix4c& rho, const EffectiveRates& rates);

// Independent sigma_- decay on each qubit, plus -i[H, rho] with a common
// omega when include_h is set.
Matrix4c amplitude_damping_rhs(const Matrix4c& rho, const EffectiveRates& rates, bool include_h,
                               double omega);

// Decay weighted by gamma_X (n_X + 1) and excitation weighted by gamma_X n_X.
Matrix4c gad_rhs(const Matrix4c& rho, const EffectiveRates& rates, double n_th_a, double n_th_b);

inline Matrix4c dephasing_rhs(const DensityMatrix& rho, const EffectiveRates& rates)
{
    return dephasing_rhs(rho.matrix(), rates);
}
inline Matrix4c amplitude_damping_rhs(const DensityMatrix& rho, const EffectiveRates& rates,
                                      bool include_h, double omega)
{
    return amplitude_damping_rhs(rho.matrix(), rates, include_h, omega);
}
inline Matrix4c gad_rhs(const DensityMatrix& rho, const EffectiveRates& rates, double n_th_a,
                        double n_th_b)
{
    return gad_rhs(rho.matrix(), rates, n_th_a, n_th_b);
}

// Single-qubit generalized amplitude damping generator at rate gamma.
Matrix2c gad_single_rhs(const Matrix2c& rho, double gamma, double n_th);

} // namespace gravdeco::channels
