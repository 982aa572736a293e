#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qflda/qcore.hpp"
#include "qflda/random.hpp"

namespace qflda {

/// Ordered, duplicate-free list of non-identity Pauli strings on N qubits.
class ObservableSet {
public:
    ObservableSet(int num_qubits, std::vector<PauliString> strings);

    /// All 4^N - 1 non-identity strings in base-4 index order (IX, IY, IZ, XI, ...).
    static ObservableSet full(int num_qubits);
    /// Strings with at most `max_weight` non-identity letters.
    static ObservableSet up_to_weight(int num_qubits, int max_weight);
    /// "full" or "weight<=K".
    static ObservableSet named(std::string_view name, int num_qubits);
    static ObservableSet from_names(const std::vector<std::string>& names);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return strings_.size(); }
    const std::vector<PauliString>& strings() const { return strings_; }
    std::vector<std::string> names() const;

private:
    int num_qubits_;
    std::vector<PauliString> strings_;
};

/// x_k = tr(rho sigma^k) for every observable.
RealVector exact_features(const DensityOperator& rho, const ObservableSet& obs);

/// Mean of `shots` +-1 outcomes per observable with P(+1) = (1 + <O>) / 2.
/// Throws ValidationError if that probability leaves [0, 1] by more than 1e-9.
RealVector sampled_features(const DensityOperator& rho, const ObservableSet& obs,
                            std::int64_t shots, RngStream& rng);

/// (I + sum_k x_k sigma^k) / 2^N. Recovers rho exactly from the full set.
ComplexMatrix reconstruct_from_features(const RealVector& features, const ObservableSet& obs);

enum class StandardizerMode { ZScore, MinMax, None };

std::string_view standardizer_name(StandardizerMode mode);
/// "zscore", "minmax" or "none".
StandardizerMode parse_standardizer(std::string_view name);

/// Per-feature affine map x -> (x - shift) / scale, fit on training rows only.
struct Standardizer {
    StandardizerMode mode = StandardizerMode::None;
    RealVector shift;
    RealVector scale; ///< strictly positive; zero-spread features get 1

    /// Rows are samples. zscore uses the population standard deviation.
    static Standardizer fit(const RealMatrix& train, StandardizerMode mode);
    /// Identity map of the given width.
    static Standardizer identity(Eigen::Index dim);

    Eigen::Index dim() const { return shift.size(); }
    RealMatrix apply(const RealMatrix& rows) const;
    RealVector apply(const RealVector& x) const;
    RealMatrix invert(const RealMatrix& rows) const;
};

} // namespace qflda
