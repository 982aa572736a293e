#include "qflda/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace qflda {

ObservableSet::ObservableSet(int num_qubits, std::vector<PauliString> strings)
    : num_qubits_(num_qubits), strings_(std::move(strings)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits)
        throw ValidationError("observable set: unsupported qubit count");
    std::set<std::size_t> seen;
    for (const auto& s : strings_) {
        if (s.size() != num_qubits_)
            throw ValidationError("observable set: string '" + s.str() + "' has wrong length");
        if (s.is_identity()) throw ValidationError("observable set: identity string not allowed");
        if (!seen.insert(s.index()).second)
            throw ValidationError("observable set: duplicate string '" + s.str() + "'");
    }
}

ObservableSet ObservableSet::full(int num_qubits) {
    return up_to_weight(num_qubits, num_qubits);
}

ObservableSet ObservableSet::up_to_weight(int num_qubits, int max_weight) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw ValidationError("observable set: unsupported qubit count");
    if (max_weight < 1) throw ValidationError("observable set: weight bound must be >= 1");
    std::vector<PauliString> strings;
    const std::size_t count = std::size_t{1} << (2 * num_qubits);
    for (std::size_t k = 1; k < count; ++k) {
        auto s = PauliString::from_index(k, num_qubits);
        if (s.weight() <= max_weight) strings.push_back(std::move(s));
    }
    return ObservableSet(num_qubits, std::move(strings));
}

ObservableSet ObservableSet::named(std::string_view name, int num_qubits) {
    if (name == "full") return full(num_qubits);
    constexpr std::string_view prefix = "weight<=";
    if (name.starts_with(prefix)) {
        int k = 0;
        const auto rest = name.substr(prefix.size());
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec == std::errc{} && ptr == rest.data() + rest.size()) return up_to_weight(num_qubits, k);
    }
    throw ValidationError("unknown observable set '" + std::string(name) + "'");
}

ObservableSet ObservableSet::from_names(const std::vector<std::string>& names) {
    if (names.empty()) throw ValidationError("observable set: no names");
    std::vector<PauliString> strings;
    for (const auto& n : names) strings.push_back(PauliString::parse(n));
    const int nq = strings.front().size();
    return ObservableSet(nq, std::move(strings));
}

std::vector<std::string> ObservableSet::names() const {
    std::vector<std::string> out;
    out.reserve(strings_.size());
    for (const auto& s : strings_) out.push_back(s.str());
    return out;
}

RealVector exact_features(const DensityOperator& rho, const ObservableSet& obs) {
    if (rho.num_qubits() != obs.num_qubits())
        throw ValidationError("exact_features: qubit count mismatch");
    RealVector x(static_cast<Eigen::Index>(obs.size()));
    for (std::size_t k = 0; k < obs.size(); ++k)
        x(static_cast<Eigen::Index>(k)) = expectation(rho, obs.strings()[k]);
    return x;
}

RealVector sampled_features(const DensityOperator& rho, const ObservableSet& obs,
                            std::int64_t shots, RngStream& rng) {
    if (shots < 1) throw ValidationError("sampled_features: shots must be >= 1");
    const RealVector exact = exact_features(rho, obs);
    RealVector x(exact.size());
    for (Eigen::Index k = 0; k < exact.size(); ++k) {
        double p_plus = 0.5 * (1.0 + exact(k));
        if (p_plus < -1e-9 || p_plus > 1.0 + 1e-9)
            throw ValidationError("sampled_features: outcome probability outside [0, 1]");
        p_plus = std::clamp(p_plus, 0.0, 1.0);
        std::binomial_distribution<std::int64_t> draw(shots, p_plus);
        const std::int64_t plus = draw(rng);
        x(k) = static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
    }
    return x;
}

ComplexMatrix reconstruct_from_features(const RealVector& features, const ObservableSet& obs) {
    if (static_cast<std::size_t>(features.size()) != obs.size())
        throw ValidationError("reconstruct: feature count mismatch");
    const auto dim = static_cast<Eigen::Index>(dimension_of(obs.num_qubits()));
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (std::size_t k = 0; k < obs.size(); ++k)
        m += features(static_cast<Eigen::Index>(k)) * pauli_string_operator(obs.strings()[k]);
    return m / static_cast<double>(dim);
}

// --- standardization ---------------------------------------------------------

std::string_view standardizer_name(StandardizerMode mode) {
    switch (mode) {
    case StandardizerMode::ZScore: return "zscore";
    case StandardizerMode::MinMax: return "minmax";
    case StandardizerMode::None: return "none";
    }
    return "none";
}

StandardizerMode parse_standardizer(std::string_view name) {
    if (name == "zscore") return StandardizerMode::ZScore;
    if (name == "minmax") return StandardizerMode::MinMax;
    if (name == "none") return StandardizerMode::None;
    throw ValidationError("unknown standardizer '" + std::string(name) + "'");
}

Standardizer Standardizer::identity(Eigen::Index dim) {
    return {StandardizerMode::None, RealVector::Zero(dim), RealVector::Ones(dim)};
}

Standardizer Standardizer::fit(const RealMatrix& train, StandardizerMode mode) {
    if (train.rows() == 0 || train.cols() == 0)
        throw ValidationError("standardizer: empty training matrix");
    if (!train.allFinite()) throw ValidationError("standardizer: non-finite training data");
    const Eigen::Index dim = train.cols();
    Standardizer s = identity(dim);
    s.mode = mode;
    // spreads at or below this are treated as constant columns
    constexpr double kFlat = 1e-12;
    switch (mode) {
    case StandardizerMode::None: break;
    case StandardizerMode::ZScore: {
        if (train.rows() < 2) throw ValidationError("standardizer: zscore needs >= 2 rows");
        s.shift = train.colwise().mean().transpose();
        const RealMatrix centered = train.rowwise() - s.shift.transpose();
        const RealVector var = centered.cwiseAbs2().colwise().mean().transpose();
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double sd = std::sqrt(var(j));
            s.scale(j) = sd > kFlat ? sd : 1.0;
        }
        break;
    }
    case StandardizerMode::MinMax: {
        s.shift = train.colwise().minCoeff().transpose();
        const RealVector hi = train.colwise().maxCoeff().transpose();
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double span = hi(j) - s.shift(j);
            s.scale(j) = span > kFlat ? span : 1.0;
        }
        break;
    }
    }
    return s;
}

RealMatrix Standardizer::apply(const RealMatrix& rows) const {
    if (rows.cols() != dim()) throw ValidationError("standardizer: feature count mismatch");
    return (rows.rowwise() - shift.transpose()).array().rowwise() / scale.transpose().array();
}

RealVector Standardizer::apply(const RealVector& x) const {
    if (x.size() != dim()) throw ValidationError("standardizer: feature count mismatch");
    return ((x - shift).array() / scale.array()).matrix();
}

RealMatrix Standardizer::invert(const RealMatrix& rows) const {
    if (rows.cols() != dim()) throw ValidationError("standardizer: feature count mismatch");
    return (rows.array().rowwise() * scale.transpose().array()).matrix().rowwise() +
           shift.transpose();
}

} // namespace qflda
