#include "gravdeco/channels.hpp"

#include <array>
#include <cmath>

namespace gravdeco::channels {

namespace {

// sigma_z eigenvalue of each qubit for basis index 2a + b.
constexpr std::array<double, 4> kSignA{1.0, 1.0, -1.0, -1.0};
constexpr std::array<double, 4> kSignB{1.0, -1.0, 1.0, -1.0};

struct LocalOperators {
    Matrix4c lower_a, raise_a, lower_b, raise_b;
    Matrix4c excited_a, excited_b; // sigma_+ sigma_- on each slot
    Matrix4c ground_a, ground_b;   // sigma_- sigma_+ on each slot
};

const LocalOperators& local_ops()
{
    static const LocalOperators ops = [] {
        const Matrix2c id = pauli(Pauli::I);
        const Matrix2c sm = pauli(Pauli::Minus);
        const Matrix2c sp = pauli(Pauli::Plus);
        LocalOperators o;
        o.lower_a = kron(sm, id);
        o.raise_a = kron(sp, id);
        o.lower_b = kron(id, sm);
        o.raise_b = kron(id, sp);
        o.excited_a = kron(sp * sm, id);
        o.excited_b = kron(id, sp * sm);
        o.ground_a = kron(sm * sp, id);
        o.ground_b = kron(id, sm * sp);
        return o;
    }();
    return ops;
}

// rate * (L rho L^dagger - {L^dagger L, rho}/2), with L^dagger L passed in.
void add_dissipator(Matrix4c& out, double rate, const Matrix4c& rho, const Matrix4c& jump,
                    const Matrix4c& jump_dag, const Matrix4c& number)
{
    if (rate == 0.0)
        return;
    out.noalias() += rate * (jump * rho * jump_dag);
    out.noalias() -= (0.5 * rate) * (number * rho + rho * number);
}

} // namespace

std::string_view to_string(ChannelKind kind)
{
    switch (kind) {
    case ChannelKind::PhaseDamping: return "phase_damping";
    case ChannelKind::AmplitudeDamping: return "amplitude_damping";
    case ChannelKind::GeneralizedAmplitudeDamping: return "generalized_amplitude_damping";
    }
    return "unknown";
}

ChannelSpec ChannelSpec::defaults_for(ChannelKind kind)
{
    ChannelSpec spec;
    spec.kind = kind;
    spec.include_hamiltonian = kind != ChannelKind::PhaseDamping;
    return spec;
}

void ChannelSpec::validate() const
{
    if (!(gamma >= 0.0))
        throw DomainError("gamma must be >= 0");
    if (!(omega >= 0.0))
        throw DomainError("omega must be >= 0");
    if (!(n_th_a >= 0.0) || !(n_th_b >= 0.0))
        throw DomainError("thermal occupations must be >= 0");
}

double thermal_occupation(double omega, double temperature)
{
    if (!(temperature > 0.0))
        throw DomainError("thermal_occupation: temperature must be > 0");
    if (!(omega > 0.0))
        throw DomainError("thermal_occupation: omega must be > 0");
    const double x = kHbar * omega / (kBoltzmann * temperature);
    return 1.0 / std::expm1(x);
}

Matrix4c local_hamiltonian(double omega_a, double omega_b)
{
    Matrix4c h = Matrix4c::Zero();
    for (int k = 0; k < 4; ++k)
        h(k, k) = 0.5 * (omega_a * kSignA[k] + omega_b * kSignB[k]);
    return h;
}

Matrix4c coherent_rhs(const Matrix4c& rho, const Matrix4c& hamiltonian)
{
    const cplx minus_i{0.0, -1.0};
    return minus_i * (hamiltonian * rho - rho * hamiltonian);
}

Matrix4c dephasing_rhs(const Matrix4c& rho, const EffectiveRates& rates)
{
    // Z rho Z multiplies rho_ij by s_i s_j, so each term is (s_i s_j - 1) rho_ij.
    Matrix4c out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double fa = kSignA[i] * kSignA[j] - 1.0;
            const double fb = kSignB[i] * kSignB[j] - 1.0;
            out(i, j) = (rates.gamma_a * fa + rates.gamma_b * fb) * rho(i, j);
        }
    return out;
}

Matrix4c amplitude_damping_rhs(const Matrix4c& rho, const EffectiveRates& rates, bool include_h,
                               double omega)
{
    const auto& op = local_ops();
    Matrix4c out = Matrix4c::Zero();
    add_dissipator(out, rates.gamma_a, rho, op.lower_a, op.raise_a, op.excited_a);
    add_dissipator(out, rates.gamma_b, rho, op.lower_b, op.raise_b, op.excited_b);
    if (include_h)
        out += coherent_rhs(rho, local_hamiltonian(omega, omega));
    return out;
}

Matrix4c gad_rhs(const Matrix4c& rho, const EffectiveRates& rates, double n_th_a, double n_th_b)
{
    const auto& op = local_ops();
    Matrix4c out = Matrix4c::Zero();
    add_dissipator(out, rates.gamma_a * (n_th_a + 1.0), rho, op.lower_a, op.raise_a, op.excited_a);
    add_dissipator(out, rates.gamma_a * n_th_a, rho, op.raise_a, op.lower_a, op.ground_a);
    add_dissipator(out, rates.gamma_b * (n_th_b + 1.0), rho, op.lower_b, op.raise_b, op.excited_b);
    add_dissipator(out, rates.gamma_b * n_th_b, rho, op.raise_b, op.lower_b, op.ground_b);
    return out;
}

Matrix2c gad_single_rhs(const Matrix2c& rho, double gamma, double n_th)
{
    const Matrix2c sm = pauli(Pauli::Minus);
    const Matrix2c sp = pauli(Pauli::Plus);
    const Matrix2c excited = sp * sm;
    const Matrix2c ground = sm * sp;
    const double down = gamma * (n_th + 1.0);
    const double up = gamma * n_th;
    Matrix2c out = down * (sm * rho * sp) - 0.5 * down * (excited * rho + rho * excited);
    out += up * (sp * rho * sm) - 0.5 * up * (ground * rho + rho * ground);
    return out;
}

} // namespace gravdeco::channels
