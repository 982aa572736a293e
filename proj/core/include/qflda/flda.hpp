#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qflda/labeling.hpp"
#include "qflda/measure.hpp"
#include "qflda/qcore.hpp"

namespace qflda {

/// Between/within-class scatter for the two classes, ordered (entangled, separable).
struct ScatterPair {
    RealMatrix s_between;
    RealMatrix s_within;
    std::array<RealVector, 2> class_means; ///< [0] = class -1, [1] = class +1
    RealVector overall_mean;
    std::array<std::int64_t, 2> class_counts{0, 0};

    /// N- N+ / N; S_B = weight * d d^T with d = mu+ - mu-.
    double between_weight() const;
};

/// Rows of `features` are samples. Requires both classes present.
ScatterPair compute_scatter(const RealMatrix& features, std::span<const ClassLabel> labels);

/// w^T S_B w / w^T (S_W + eps I) w. Invariant under w -> alpha w.
double fisher_criterion(const ScatterPair& scatter, const RealVector& w, double epsilon);

enum class ThresholdPolicy {
    Midpoint,     ///< (w^T mu- + w^T mu+) / 2
    PriorWeighted ///< midpoint shifted by the log prior ratio under a pooled-variance model
};

struct FitOptions {
    double epsilon = 1e-6;
    /// When true the regularizer is epsilon * mean(diag S_W), falling back to
    /// epsilon itself if S_W has zero trace.
    bool relative_epsilon = true;
    StandardizerMode standardizer = StandardizerMode::ZScore;
    ThresholdPolicy threshold_policy = ThresholdPolicy::Midpoint;
};

struct FldaModel {
    RealVector w;                         ///< unit length, w^T mu+ > w^T mu-
    std::array<double, 2> projected_means{0.0, 0.0}; ///< [0] entangled, [1] separable
    double threshold = 0.0;
    double epsilon = 0.0;                 ///< absolute regularizer actually applied
    double fisher_j = 0.0;
    Standardizer standardizer;
    std::vector<std::string> feature_names;
    std::string label_convention = "paper";

    Eigen::Index dim() const { return w.size(); }
};

/// Two-class closed form w ~ (S_W + eps I)^-1 (mu+ - mu-), on standardized features.
/// Throws SingularMatrixError when S_W + eps I cannot be factored.
FldaModel fit(const RealMatrix& features, std::span<const ClassLabel> labels,
              const FitOptions& options = {});

/// Top eigenvector of S_B w = lambda (S_W + eps I) w, unit length with the
/// same sign convention as fit. Verification path for the closed form.
RealVector generalized_eigen_direction(const ScatterPair& scatter, double epsilon);

/// y = w^T standardize(x)
double project(const FldaModel& model, const RealVector& x);
RealVector project_rows(const FldaModel& model, const RealMatrix& rows);

/// Nearest projected mean; y within 1e-15 of the threshold resolves to Separable.
ClassLabel classify(const FldaModel& model, const RealVector& x);
ClassLabel classify_projection(const FldaModel& model, double y);

struct ConfusionCounts {
    /// counts[actual][predicted], index 0 = entangled, 1 = separable
    std::array<std::array<std::int64_t, 2>, 2> counts{{{0, 0}, {0, 0}}};

    std::int64_t total() const;
    std::int64_t correct() const;
};

struct Metrics {
    double accuracy = 0.0;
    double threshold = 0.0;
    double fisher_j = 0.0;
    ConfusionCounts confusion;
};

Metrics evaluate(const FldaModel& model, const RealMatrix& features,
                 std::span<const ClassLabel> labels);

nlohmann::json model_to_json(const FldaModel& model);
FldaModel model_from_json(const nlohmann::json& doc);
std::string serialize_model(const FldaModel& model);
FldaModel deserialize_model(const std::string& text);

} // namespace qflda
