// oracle.hpp: closed-form reference solutions. Nothing here touches the
// integrator or the channel generators.

#pragma once

#include "gravdeco/quantum_state.hpp"

namespace gravdeco::oracle {

struct DephasingOracle {
    double gamma{0.0};
    double alpha{1.0};
    double beta{1.0};

    void validate() const;
};

// Bell coherence 0.5 exp(-2 gamma (alpha + beta) t).
double dephased_rho14(const DephasingOracle& oracle, double t);

DensityMatrix dephased_bell_state(const DephasingOracle& oracle, double t);

// ln 2 / (2 gamma (alpha + beta)). Throws DomainError when the rate is zero.
double coherence_halflife(const DephasingOracle& oracle);

// diag(p0, p1) with p1 = n/(2n + 1).
Matrix2c gad_steady_state_single(double n_th);

} // namespace gravdeco::oracle
