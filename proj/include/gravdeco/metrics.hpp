// metrics.hpp: entanglement and coherence quantifiers for two-qubit states.

#pragma once

#include <span>
#include <vector>

#include "gravdeco/quantum_state.hpp"

namespace gravdeco::metrics {

// Eigenvalue magnitudes below this are treated as zero.
inline constexpr double kEigenvalueClamp = 1e-10;
inline constexpr double kDefaultRevivalThreshold = 1e-4;

// Wootters concurrence. The spin-flip values lambda_i are computed as the
// singular values of sqrt(rho) (Y(x)Y) conj(sqrt(rho)).
double concurrence(const Matrix4c& rho);

// Sum of |negative eigenvalues| of the partial transpose over qubit B.
double negativity(const Matrix4c& rho);

double l1_coherence(const Matrix4c& rho);

double purity(const Matrix4c& rho);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const Matrix4c& rho, const Matrix4c& sigma);

// PSD square root of the Hermitian part, eigenvalue noise clamped.
Matrix4c sqrt_psd(const Matrix4c& m);

inline double concurrence(const DensityMatrix& rho) { return concurrence(rho.matrix()); }
inline double negativity(const DensityMatrix& rho) { return negativity(rho.matrix()); }
inline double l1_coherence(const DensityMatrix& rho) { return l1_coherence(rho.matrix()); }

struct MetricSample {
    double t{0.0};
    double concurrence{0.0};
    double negativity{0.0};
    double l1_coherence{0.0};
    double purity{1.0};
    double fidelity_to_initial{1.0};
    double purity_a{1.0};
    double purity_b{1.0};
    double pop_excited_a{0.0};
    double pop_excited_b{0.0};
};

MetricSample measure(double t, const Matrix4c& rho, const Matrix4c& initial);

struct RevivalEvent {
    double t_min{0.0};
    double value_min{0.0};
    double t_peak{0.0};
    double value_peak{0.0};
    double rise() const { return value_peak - value_min; }
};

// A revival is a local minimum followed by a rise of more than threshold
// before the series falls again by more than threshold (or ends).
std::vector<RevivalEvent> detect_revivals(std::span<const double> times, std::span<const double> values,
                                          double threshold = kDefaultRevivalThreshold);

} // namespace gravdeco::metrics
