#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qflda/error.hpp"

#ifndef QFLDA_MAX_QUBITS
#define QFLDA_MAX_QUBITS 6
#endif

namespace qflda {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr int kMaxQubits = QFLDA_MAX_QUBITS;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;

/// Hilbert-space dimension 2^n.
constexpr std::size_t dimension_of(int num_qubits) { return std::size_t{1} << num_qubits; }

/// Qubit count for a power-of-two dimension, or -1.
int qubits_for_dimension(Eigen::Index dim);

/// Largest entry of |m - m^dagger|. Zero for exactly Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

Complex trace(const ComplexMatrix& m);

/// Kronecker product. Throws ValidationError when the result would exceed
/// the dimension of a kMaxQubits-qubit operator.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Dense N-qubit operator: Hermitian, unit trace, PSD within tolerance.
/// Immutable once constructed; construction validates.
class DensityOperator {
public:
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and PSD (-1e-9).
    explicit DensityOperator(ComplexMatrix matrix);

    static DensityOperator maximally_mixed(int num_qubits);
    /// |psi><psi| for a normalized state vector.
    static DensityOperator from_pure(const Eigen::VectorXcd& psi);

    const ComplexMatrix& matrix() const { return matrix_; }
    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return matrix_.rows(); }

    /// tr(rho^2)
    double purity() const;

private:
    ComplexMatrix matrix_;
    int num_qubits_ = 0;
};

enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

ComplexMatrix pauli_matrix(Pauli k);

/// Tensor-product Pauli observable, letters ordered most-significant qubit first:
/// "XZ" acts with X on qubit 0 (the high bit of the basis index) and Z on qubit 1.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> letters);
    /// Parses a word over {I,X,Y,Z}; throws ValidationError on other characters.
    static PauliString parse(std::string_view word);
    /// Inverse of index(): base-4 digits of `index`, qubit 0 most significant.
    static PauliString from_index(std::size_t index, int num_qubits);

    int size() const { return static_cast<int>(letters_.size()); }
    Pauli operator[](int qubit) const { return letters_[static_cast<std::size_t>(qubit)]; }
    std::span<const Pauli> letters() const { return letters_; }

    bool is_identity() const;
    /// Number of non-identity letters.
    int weight() const;
    std::size_t index() const;
    std::string str() const;

    /// Bit masks over basis indices: flip = X or Y positions, phase = Y or Z positions.
    std::size_t flip_mask() const;
    std::size_t phase_mask() const;
    int y_count() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    std::vector<Pauli> letters_;
};

ComplexMatrix pauli_string_operator(const PauliString& s);

/// Transposes the tensor factors of the listed qubits. Throws on an empty set
/// or out-of-range index. Transposing every qubit equals the full transpose.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int num_qubits,
                                std::span<const int> subsystems);
ComplexMatrix partial_transpose(const DensityOperator& rho, std::span<const int> subsystems);

/// Ascending eigenvalues of a Hermitian matrix (defect tolerance 1e-8).
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// tr(rho O) for a Hermitian observable of matching dimension.
double expectation(const DensityOperator& rho, const ComplexMatrix& obs);

/// tr(rho sigma^k) in O(2^N) without building the operator.
double expectation(const DensityOperator& rho, const PauliString& s);

/// Reorders tensor factors: qubit q of the input becomes qubit perm[q] of the result.
ComplexMatrix permute_qubits(const ComplexMatrix& m, int num_qubits, std::span<const int> perm);

} // namespace qflda
