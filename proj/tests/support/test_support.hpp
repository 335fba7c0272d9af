// test_support.hpp: reference implementations and random generators used
// only by the tests. Nothing here calls into the generator or integrator code.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gravdeco/quantum_state.hpp"

namespace gravdeco::testing {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using cplx = std::complex<double>;

inline Matrix2c sz() { return (Matrix2c() << 1, 0, 0, -1).finished(); }
inline Matrix2c id2() { return Matrix2c::Identity(); }
inline Matrix2c lower() { return (Matrix2c() << 0, 1, 0, 0).finished(); } // |0><1|
inline Matrix2c raise() { return (Matrix2c() << 0, 0, 1, 0).finished(); } // |1><0|

// Kronecker product written independently of gravdeco::kron.
inline Matrix4c tensor(const Matrix2c& a, const Matrix2c& b)
{
    Matrix4c out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = a(i / 2, j / 2) * b(i % 2, j % 2);
    return out;
}

// Uncollapsed Lindblad term L rho L^dagger - {L^dagger L, rho}/2.
template <class M>
M lindblad(const M& rho, const M& jump)
{
    const M ldl = jump.adjoint() * jump;
    return jump * rho * jump.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

inline Matrix4c commutator_term(const Matrix4c& rho, const Matrix4c& h)
{
    return cplx(0, -1) * (h * rho - rho * h);
}

// Random mixed state: G G^dagger / tr, G with complex Gaussian entries.
inline Matrix4c random_density(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g(i, j) = cplx(n(rng), n(rng));
    Matrix4c rho = g * g.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

inline Matrix2c random_qubit_state(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            g(i, j) = cplx(n(rng), n(rng));
    Matrix2c rho = g * g.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

inline Matrix2c random_matrix2(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            g(i, j) = cplx(n(rng), n(rng));
    return g;
}

// Haar-ish single-qubit unitary from a QR decomposition.
inline Matrix2c random_unitary(std::mt19937_64& rng)
{
    Eigen::HouseholderQR<Matrix2c> qr(random_matrix2(rng));
    return qr.householderQ();
}

// Concurrence of an X-shaped state (nonzero entries only on the diagonal and
// anti-diagonal): 2 max(0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)).
inline double x_state_concurrence(const Matrix4c& r)
{
    const double a = std::abs(r(0, 3)) - std::sqrt(r(1, 1).real() * r(2, 2).real());
    const double b = std::abs(r(1, 2)) - std::sqrt(r(0, 0).real() * r(3, 3).real());
    return 2.0 * std::max({0.0, a, b});
}

inline double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace gravdeco::testing
