#include "gravdeco/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace gravdeco {

Matrix2c pauli(Pauli which)
{
    const cplx i{0.0, 1.0};
    Matrix2c m = Matrix2c::Zero();
    switch (which) {
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    case Pauli::I: m = Matrix2c::Identity(); break;
    case Pauli::Plus: m(1, 0) = 1.0; break;  // |1><0|
    case Pauli::Minus: m(0, 1) = 1.0; break; // |0><1|
    }
    return m;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b)
{
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

double hermiticity_residual(const Eigen::Ref<const Eigen::MatrixXcd>& m)
{
    if (m.rows() != m.cols())
        throw InvalidStateError("matrix is not square");
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> eigvals_hermitian(const Eigen::Ref<const Eigen::MatrixXcd>& m)
{
    if (hermiticity_residual(m) > 1e-10)
        throw InvalidStateError("eigvals_hermitian: input is not Hermitian");
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double min_eigenvalue(const Matrix4c& m)
{
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(const Matrix4c& m) : m_(m)
{
    const double herm = hermiticity_residual(m);
    if (herm > StateTolerances::hermiticity)
        throw InvalidStateError("density matrix is not Hermitian (residual " + std::to_string(herm) + ")");
    const double trace_err = std::abs(m.trace() - 1.0);
    if (trace_err > StateTolerances::trace)
        throw InvalidStateError("density matrix trace differs from 1 by " + std::to_string(trace_err));
    const double lo = min_eigenvalue(m);
    if (lo < -StateTolerances::positivity)
        throw InvalidStateError("density matrix has negative eigenvalue " + std::to_string(lo));
}

DensityMatrix DensityMatrix::hermitized(const Matrix4c& m)
{
    return {0.5 * (m + m.adjoint()), Unchecked{}};
}

DensityMatrix DensityMatrix::basis_projector(int index)
{
    if (index < 0 || index > 3)
        throw InvalidStateError("basis index must be in 0..3");
    Matrix4c m = Matrix4c::Zero();
    m(index, index) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::product(const Matrix2c& rho_a, const Matrix2c& rho_b)
{
    return DensityMatrix(kron(rho_a, rho_b));
}

DensityMatrix DensityMatrix::maximally_mixed()
{
    return DensityMatrix(Matrix4c::Identity() * 0.25);
}

double DensityMatrix::purity() const
{
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return m_.cwiseAbs2().sum();
}

DensityMatrix bell_state()
{
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return DensityMatrix(m);
}

Matrix2c partial_trace(const Matrix4c& rho, Qubit keep)
{
    Matrix2c out = Matrix2c::Zero();
    // index = 2*a + b
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (keep == Qubit::A)
                    out(i, j) += rho(2 * i + k, 2 * j + k);
                else
                    out(i, j) += rho(2 * k + i, 2 * k + j);
            }
    return out;
}

Matrix4c partial_transpose_b(const Matrix4c& rho)
{
    Matrix4c out;
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            out.block<2, 2>(2 * a, 2 * c) = rho.block<2, 2>(2 * a, 2 * c).transpose();
    return out;
}

Matrix4c swap_qubits(const Matrix4c& rho)
{
    Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
    perm(0, 0) = perm(1, 2) = perm(2, 1) = perm(3, 3) = 1.0;
    const Matrix4c p = perm.cast<cplx>();
    return p * rho * p;
}

} // namespace gravdeco
