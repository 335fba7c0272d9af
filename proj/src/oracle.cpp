#include "gravdeco/oracle.hpp"

#include <cmath>
#include <numbers>

#include "gravdeco/spacetime.hpp"

namespace gravdeco::oracle {

void DephasingOracle::validate() const
{
    if (!(gamma >= 0.0))
        throw DomainError("oracle gamma must be >= 0");
    if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0))
        throw DomainError("oracle redshift factors must lie in (0, 1]");
}

double dephased_rho14(const DephasingOracle& oracle, double t)
{
    oracle.validate();
    if (!(t >= 0.0))
        throw DomainError("oracle time must be >= 0");
    return 0.5 * std::exp(-2.0 * oracle.gamma * (oracle.alpha + oracle.beta) * t);
}

DensityMatrix dephased_bell_state(const DephasingOracle& oracle, double t)
{
    const double c = dephased_rho14(oracle, t);
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = m(3, 3) = 0.5;
    m(0, 3) = m(3, 0) = c;
    return DensityMatrix(m);
}

double coherence_halflife(const DephasingOracle& oracle)
{
    oracle.validate();
    const double rate = oracle.gamma * (oracle.alpha + oracle.beta);
    if (rate == 0.0)
        throw DomainError("coherence_halflife: zero decay rate");
    return std::numbers::ln2 / (2.0 * rate);
}

Matrix2c gad_steady_state_single(double n_th)
{
    if (!(n_th >= 0.0))
        throw DomainError("gad_steady_state_single: n_th must be >= 0");
    Matrix2c m = Matrix2c::Zero();
    if (std::isinf(n_th)) {
        m(0, 0) = m(1, 1) = 0.5;
        return m;
    }
    const double denom = 2.0 * n_th + 1.0;
    m(0, 0) = (n_th + 1.0) / denom;
    m(1, 1) = n_th / denom;
    return m;
}

} // namespace gravdeco::oracle
