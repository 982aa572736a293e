#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qflda/qcore.hpp"
#include "qflda/states.hpp"

namespace qflda {

enum class ClassLabel : int { Entangled = -1, Separable = 1 };

constexpr int to_int(ClassLabel l) { return static_cast<int>(l); }
/// Accepts only -1 and +1.
ClassLabel label_from_int(int value);

enum class LabelConvention { Paper, PptOracle };

std::string_view convention_name(LabelConvention c);
/// "paper" or "ppt-oracle".
LabelConvention parse_convention(std::string_view name);

/// Nonempty proper qubit subsets containing qubit 0: one representative per
/// {S, complement} pair, 2^(N-1) - 1 cuts in total.
std::vector<std::vector<int>> canonical_cuts(int num_qubits);

/// "A|BC" style label for the cut `subset` | complement.
std::string cut_descriptor(const std::vector<int>& subset, int num_qubits);

double min_partial_transpose_eigenvalue(const DensityOperator& rho, const std::vector<int>& subset);

struct PptReport {
    std::map<std::string, double> min_eigenvalue; ///< keyed by cut_descriptor
    double overall_min = 0.0;
    bool is_ppt_all = true; ///< every min eigenvalue >= -1e-9
};

PptReport ppt_report(const DensityOperator& rho);

/// sin(theta0) sin(theta1 / 2)
double concurrence_analytic(const ConcurrenceParams& params);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.
double concurrence_wootters(const DensityOperator& rho);

/// Entangled-above-p thresholds used by the `paper` convention.
struct PaperThresholds {
    double werner2 = 1.0 / 3.0;
    double werner3 = 1.0 / 5.0;
    double werner4 = 1.0 / 7.0;
};

/// PPT onset of the n-qubit GHZ Werner mixture: 1 / (1 + 2^(n-1)).
double ghz_ppt_threshold(int num_qubits);

/// Mixing parameter above which a Werner-family state counts as entangled.
double werner_threshold(Family family, LabelConvention convention,
                        const PaperThresholds& thresholds = {});

ClassLabel assign_label(const FamilyParams& params, LabelConvention convention,
                        const PaperThresholds& thresholds = {});

} // namespace qflda
