// quantum_state.hpp: two-qubit operators and density matrices.
//
// Basis ordering is |00>, |01>, |10>, |11> with qubit A in the left
// (most significant) tensor slot. |0> is the ground state, |1> the excited
// state, and sigma_z = diag(+1, -1).

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace gravdeco {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

class InvalidStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Pauli { X, Y, Z, I, Plus, Minus };
enum class Qubit { A, B };

Matrix2c pauli(Pauli which);

// a (x) b with a acting on qubit A.
Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

// max |m_ij - conj(m_ji)|
double hermiticity_residual(const Eigen::Ref<const Eigen::MatrixXcd>& m);

// Real eigenvalues in descending order. Throws InvalidStateError if m is not
// Hermitian within 1e-10.
std::vector<double> eigvals_hermitian(const Eigen::Ref<const Eigen::MatrixXcd>& m);

// Smallest eigenvalue of the Hermitian part (m + m^dagger)/2; no Hermiticity check.
double min_eigenvalue(const Matrix4c& m);

struct StateTolerances {
    static constexpr double hermiticity = 1e-12;
    static constexpr double trace = 1e-12;
    static constexpr double positivity = 1e-10;
};

class DensityMatrix {
public:
    // Validates Hermiticity, unit trace and positivity.
    explicit DensityMatrix(const Matrix4c& m);

    // Repair path used by the integrator: re-hermitizes via (m + m^dagger)/2
    // without enforcing trace or positivity. Drift is reported, not hidden.
    static DensityMatrix hermitized(const Matrix4c& m);

    // |index><index| for index in 0..3 (|00>, |01>, |10>, |11>).
    static DensityMatrix basis_projector(int index);
    static DensityMatrix product(const Matrix2c& rho_a, const Matrix2c& rho_b);
    static DensityMatrix maximally_mixed();

    const Matrix4c& matrix() const { return m_; }
    cplx operator()(int row, int col) const { return m_(row, col); }

    cplx trace() const { return m_.trace(); }
    double purity() const;

private:
    struct Unchecked {};
    DensityMatrix(const Matrix4c& m, Unchecked) : m_(m) {}

    Matrix4c m_;
};

DensityMatrix bell_state();

// Reduced state of the kept qubit.
Matrix2c partial_trace(const Matrix4c& rho, Qubit keep);
inline Matrix2c partial_trace(const DensityMatrix& rho, Qubit keep)
{
    return partial_trace(rho.matrix(), keep);
}

// Partial transpose over qubit B.
Matrix4c partial_transpose_b(const Matrix4c& rho);

// SWAP rho SWAP: exchanges the roles of qubits A and B.
Matrix4c swap_qubits(const Matrix4c& rho);

} // namespace gravdeco
