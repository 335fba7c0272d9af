#include "gravdeco/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gravdeco::metrics {

namespace {

const Matrix4c& spin_flip()
{
    static const Matrix4c yy = kron(pauli(Pauli::Y), pauli(Pauli::Y));
    return yy;
}

double clamp_noise(double v)
{
    return std::abs(v) < kEigenvalueClamp ? 0.0 : v;
}

} // namespace

Matrix4c sqrt_psd(const Matrix4c& m)
{
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h);
    Eigen::Vector4d roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const auto& v = solver.eigenvectors();
    return v * roots.cast<cplx>().asDiagonal() * v.adjoint();
}

double concurrence(const Matrix4c& rho)
{
    const Matrix4c s = sqrt_psd(rho);
    const Matrix4c a = s * spin_flip() * s.conjugate();
    Eigen::JacobiSVD<Matrix4c> svd(a);
    // singular values come sorted in decreasing order
    const Eigen::Vector4d lam = svd.singularValues();
    const double c = clamp_noise(lam(0)) - clamp_noise(lam(1)) - clamp_noise(lam(2)) - clamp_noise(lam(3));
    return std::max(0.0, clamp_noise(c));
}

double negativity(const Matrix4c& rho)
{
    const Matrix4c pt = partial_transpose_b(rho);
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double e = clamp_noise(solver.eigenvalues()(k));
        if (e < 0.0)
            neg -= e;
    }
    return neg;
}

double l1_coherence(const Matrix4c& rho)
{
    return rho.cwiseAbs().sum() - rho.diagonal().cwiseAbs().sum();
}

double purity(const Matrix4c& rho)
{
    return (rho * rho).trace().real();
}

double fidelity(const Matrix4c& rho, const Matrix4c& sigma)
{
    Eigen::JacobiSVD<Matrix4c> svd(sqrt_psd(rho) * sqrt_psd(sigma));
    const double f = svd.singularValues().sum();
    return std::clamp(f * f, 0.0, 1.0);
}

MetricSample measure(double t, const Matrix4c& rho, const Matrix4c& initial)
{
    const Matrix2c ra = partial_trace(rho, Qubit::A);
    const Matrix2c rb = partial_trace(rho, Qubit::B);
    MetricSample s;
    s.t = t;
    s.concurrence = concurrence(rho);
    s.negativity = negativity(rho);
    s.l1_coherence = l1_coherence(rho);
    s.purity = purity(rho);
    s.fidelity_to_initial = fidelity(rho, initial);
    s.purity_a = (ra * ra).trace().real();
    s.purity_b = (rb * rb).trace().real();
    s.pop_excited_a = ra(1, 1).real();
    s.pop_excited_b = rb(1, 1).real();
    return s;
}

std::vector<RevivalEvent> detect_revivals(std::span<const double> times, std::span<const double> values,
                                          double threshold)
{
    if (times.size() != values.size())
        throw std::invalid_argument("detect_revivals: times and values differ in length");
    std::vector<RevivalEvent> events;
    if (values.size() < 2)
        return events;

    RevivalEvent current{times[0], values[0], times[0], values[0]};
    bool rising = false;
    for (std::size_t k = 1; k < values.size(); ++k) {
        const double v = values[k];
        if (!rising) {
            if (v < current.value_min) {
                current.t_min = times[k];
                current.value_min = v;
            } else if (v - current.value_min > threshold) {
                rising = true;
                current.t_peak = times[k];
                current.value_peak = v;
            }
        } else if (v > current.value_peak) {
            current.t_peak = times[k];
            current.value_peak = v;
        } else if (current.value_peak - v > threshold) {
            events.push_back(current);
            rising = false;
            current = {times[k], v, times[k], v};
        }
    }
    if (rising)
        events.push_back(current);
    return events;
}

} // namespace gravdeco::metrics
