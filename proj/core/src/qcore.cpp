#include "qflda/qcore.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <sstream>

namespace qflda {

namespace {

constexpr Eigen::Index kMaxDim = Eigen::Index{1} << kMaxQubits;

std::size_t bit_of(int qubit, int num_qubits) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

} // namespace

int qubits_for_dimension(Eigen::Index dim) {
    if (dim <= 0) return -1;
    const auto u = static_cast<std::size_t>(dim);
    if (!std::has_single_bit(u)) return -1;
    return std::countr_zero(u);
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

Complex trace(const ComplexMatrix& m) {
    return m.trace();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index rows = a.rows() * b.rows();
    const Eigen::Index cols = a.cols() * b.cols();
    if (rows > kMaxDim || cols > kMaxDim) {
        std::ostringstream msg;
        msg << "kron: result " << rows << "x" << cols << " exceeds the " << kMaxQubits
            << "-qubit limit";
        throw ValidationError(msg.str());
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// --- DensityOperator -------------------------------------------------------

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols())
        throw ValidationError("density operator must be square");
    num_qubits_ = qubits_for_dimension(matrix_.rows());
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits)
        throw ValidationError("density operator dimension must be 2^N with 1 <= N <= " +
                              std::to_string(kMaxQubits));
    if (!all_finite(matrix_)) throw ValidationError("density operator has non-finite entries");
    if (hermiticity_defect(matrix_) > kHermitianTolerance)
        throw ValidationError("density operator is not Hermitian");
    const Complex tr = trace(matrix_);
    if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTolerance)
        throw ValidationError("density operator trace is not 1");
    const RealVector ev = hermitian_eigenvalues(matrix_);
    if (ev(0) < -kPsdTolerance)
        throw ValidationError("density operator is not positive semi-definite");
}

DensityOperator DensityOperator::maximally_mixed(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw ValidationError("unsupported qubit count");
    const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
    return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::from_pure(const Eigen::VectorXcd& psi) {
    if (std::abs(psi.squaredNorm() - 1.0) > kTraceTolerance)
        throw ValidationError("state vector is not normalized");
    return DensityOperator(psi * psi.adjoint());
}

double DensityOperator::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return matrix_.cwiseAbs2().sum();
}

// --- Pauli algebra ---------------------------------------------------------

char to_char(Pauli p) {
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    return kLetters[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ValidationError(std::string("invalid Pauli letter '") + c + "'");
    }
}

ComplexMatrix pauli_matrix(Pauli k) {
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    switch (k) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {}

PauliString PauliString::parse(std::string_view word) {
    std::vector<Pauli> letters;
    letters.reserve(word.size());
    for (char c : word) letters.push_back(pauli_from_char(c));
    return PauliString(std::move(letters));
}

PauliString PauliString::from_index(std::size_t index, int num_qubits) {
    std::vector<Pauli> letters(static_cast<std::size_t>(num_qubits));
    for (int q = num_qubits - 1; q >= 0; --q) {
        letters[static_cast<std::size_t>(q)] = static_cast<Pauli>(index & 3U);
        index >>= 2;
    }
    return PauliString(std::move(letters));
}

bool PauliString::is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(), [](Pauli p) { return p == Pauli::I; });
}

int PauliString::weight() const {
    return static_cast<int>(
        std::count_if(letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::size_t PauliString::index() const {
    std::size_t idx = 0;
    for (Pauli p : letters_) idx = (idx << 2) | static_cast<std::size_t>(p);
    return idx;
}

std::string PauliString::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Pauli p : letters_) s.push_back(to_char(p));
    return s;
}

std::size_t PauliString::flip_mask() const {
    std::size_t mask = 0;
    for (int q = 0; q < size(); ++q)
        if ((*this)[q] == Pauli::X || (*this)[q] == Pauli::Y) mask |= bit_of(q, size());
    return mask;
}

std::size_t PauliString::phase_mask() const {
    std::size_t mask = 0;
    for (int q = 0; q < size(); ++q)
        if ((*this)[q] == Pauli::Y || (*this)[q] == Pauli::Z) mask |= bit_of(q, size());
    return mask;
}

int PauliString::y_count() const {
    return static_cast<int>(std::count(letters_.begin(), letters_.end(), Pauli::Y));
}

ComplexMatrix pauli_string_operator(const PauliString& s) {
    if (s.size() == 0) throw ValidationError("empty Pauli string");
    if (s.size() > kMaxQubits) throw ValidationError("Pauli string longer than the qubit limit");
    ComplexMatrix out = pauli_matrix(s[0]);
    for (int q = 1; q < s.size(); ++q) out = kron(out, pauli_matrix(s[q]));
    return out;
}

// --- partial transpose -----------------------------------------------------

ComplexMatrix partial_transpose(const ComplexMatrix& m, int num_qubits,
                                std::span<const int> subsystems) {
    if (subsystems.empty()) throw ValidationError("partial_transpose: empty subsystem set");
    if (m.rows() != m.cols() || qubits_for_dimension(m.rows()) != num_qubits)
        throw ValidationError("partial_transpose: matrix is not a 2^N square operator");
    std::size_t mask = 0;
    for (int q : subsystems) {
        if (q < 0 || q >= num_qubits)
            throw ValidationError("partial_transpose: qubit index out of range");
        mask |= bit_of(q, num_qubits);
    }
    // Swap the row/column bits of the selected tensor factors.
    const auto dim = static_cast<std::size_t>(m.rows());
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            const std::size_t r2 = (r & ~mask) | (c & mask);
            const std::size_t c2 = (c & ~mask) | (r & mask);
            out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) =
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, std::span<const int> subsystems) {
    return partial_transpose(rho.matrix(), rho.num_qubits(), subsystems);
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw ValidationError("hermitian_eigenvalues: matrix must be square and nonempty");
    if (hermiticity_defect(m) > 1e-8)
        throw ValidationError("hermitian_eigenvalues: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ValidationError("hermitian_eigenvalues: eigensolver did not converge");
    return solver.eigenvalues();
}

double expectation(const DensityOperator& rho, const ComplexMatrix& obs) {
    if (obs.rows() != rho.dim() || obs.cols() != rho.dim())
        throw ValidationError("expectation: observable dimension mismatch");
    if (hermiticity_defect(obs) > 1e-8)
        throw ValidationError("expectation: observable is not Hermitian");
    // tr(rho O) = sum_ij rho_ij O_ji
    return rho.matrix().cwiseProduct(obs.transpose()).sum().real();
}

double expectation(const DensityOperator& rho, const PauliString& s) {
    if (s.size() != rho.num_qubits())
        throw ValidationError("expectation: Pauli string length " + std::to_string(s.size()) +
                              " does not match " + std::to_string(rho.num_qubits()) + " qubits");
    const std::size_t flip = s.flip_mask();
    const std::size_t phase = s.phase_mask();
    const auto dim = static_cast<std::size_t>(rho.dim());
    const auto& m = rho.matrix();
    // sigma[c ^ flip, c] = i^{#Y} (-1)^{popcount(c & phase)}
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < dim; ++c) {
        const Complex v = m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ flip));
        acc += (std::popcount(c & phase) & 1U) ? -v : v;
    }
    static constexpr Complex kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return (acc * kIPow[s.y_count() & 3]).real();
}

ComplexMatrix permute_qubits(const ComplexMatrix& m, int num_qubits, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != num_qubits)
        throw ValidationError("permute_qubits: permutation size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(num_qubits), false);
    for (int t : perm) {
        if (t < 0 || t >= num_qubits || seen[static_cast<std::size_t>(t)])
            throw ValidationError("permute_qubits: not a permutation");
        seen[static_cast<std::size_t>(t)] = true;
    }
    const auto dim = dimension_of(num_qubits);
    std::vector<std::size_t> target(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t j = 0;
        for (int q = 0; q < num_qubits; ++q)
            if (i & bit_of(q, num_qubits)) j |= bit_of(perm[static_cast<std::size_t>(q)], num_qubits);
        target[i] = j;
    }
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            out(static_cast<Eigen::Index>(target[r]), static_cast<Eigen::Index>(target[c])) =
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return out;
}

} // namespace qflda
