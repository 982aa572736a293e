#include "qflda/flda.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace qflda {

namespace {

int class_slot(ClassLabel l) { return l == ClassLabel::Entangled ? 0 : 1; }

void check_rows(const RealMatrix& features, std::span<const ClassLabel> labels) {
    if (features.rows() == 0) throw ValidationError("no samples");
    if (static_cast<std::size_t>(features.rows()) != labels.size())
        throw ValidationError("feature rows and labels differ in count");
    if (!features.allFinite()) throw ValidationError("non-finite feature values");
}

RealVector orient(RealVector w, const ScatterPair& scatter) {
    const double norm = w.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw ValidationError("discriminant direction is zero; class means coincide");
    w /= norm;
    if (w.dot(scatter.class_means[1]) < w.dot(scatter.class_means[0])) w = -w;
    return w;
}

} // namespace

double ScatterPair::between_weight() const {
    const auto n = static_cast<double>(class_counts[0] + class_counts[1]);
    return static_cast<double>(class_counts[0]) * static_cast<double>(class_counts[1]) / n;
}

ScatterPair compute_scatter(const RealMatrix& features, std::span<const ClassLabel> labels) {
    check_rows(features, labels);
    const Eigen::Index dim = features.cols();
    ScatterPair sp;
    sp.class_means = {RealVector::Zero(dim), RealVector::Zero(dim)};
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
        const int slot = class_slot(labels[static_cast<std::size_t>(r)]);
        sp.class_means[slot] += features.row(r).transpose();
        ++sp.class_counts[slot];
    }
    if (sp.class_counts[0] == 0 || sp.class_counts[1] == 0)
        throw ValidationError("both classes must be present");
    for (int c = 0; c < 2; ++c) sp.class_means[c] /= static_cast<double>(sp.class_counts[c]);

    const auto n = static_cast<double>(features.rows());
    sp.overall_mean = (static_cast<double>(sp.class_counts[0]) * sp.class_means[0] +
                       static_cast<double>(sp.class_counts[1]) * sp.class_means[1]) / n;

    sp.s_between = RealMatrix::Zero(dim, dim);
    for (int c = 0; c < 2; ++c) {
        const RealVector d = sp.class_means[c] - sp.overall_mean;
        sp.s_between.noalias() += static_cast<double>(sp.class_counts[c]) * d * d.transpose();
    }

    RealMatrix centered(features.rows(), dim);
    for (Eigen::Index r = 0; r < features.rows(); ++r)
        centered.row(r) = features.row(r) -
                          sp.class_means[class_slot(labels[static_cast<std::size_t>(r)])].transpose();
    sp.s_within = RealMatrix::Zero(dim, dim);
    sp.s_within.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    sp.s_within = sp.s_within.selfadjointView<Eigen::Lower>();
    return sp;
}

double fisher_criterion(const ScatterPair& scatter, const RealVector& w, double epsilon) {
    if (w.size() != scatter.s_between.rows()) throw ValidationError("direction dimension mismatch");
    if (w.isZero(0.0)) throw ValidationError("fisher_criterion: zero direction");
    const double num = w.dot(scatter.s_between * w);
    const double den = w.dot(scatter.s_within * w) + epsilon * w.squaredNorm();
    if (den <= 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return num / den;
}

FldaModel fit(const RealMatrix& features, std::span<const ClassLabel> labels,
              const FitOptions& options) {
    check_rows(features, labels);
    if (!(options.epsilon >= 0.0)) throw ValidationError("epsilon must be nonnegative");

    FldaModel model;
    model.standardizer = Standardizer::fit(features, options.standardizer);
    const RealMatrix z = model.standardizer.apply(features);
    const ScatterPair sp = compute_scatter(z, labels);
    const Eigen::Index dim = z.cols();

    double eps = options.epsilon;
    if (options.relative_epsilon) {
        const double mean_diag = sp.s_within.trace() / static_cast<double>(dim);
        if (mean_diag > 0.0) eps *= mean_diag;
    }
    model.epsilon = eps;

    RealMatrix reg = sp.s_within;
    reg.diagonal().array() += eps;
    Eigen::LLT<RealMatrix> llt(reg);
    if (llt.info() != Eigen::Success || !(llt.rcond() > 1e-14))
        throw SingularMatrixError(
            "within-class scatter is singular; increase epsilon to regularize S_W + eps I");

    const RealVector diff = sp.class_means[1] - sp.class_means[0];
    model.w = orient(llt.solve(diff), sp);
    model.projected_means = {model.w.dot(sp.class_means[0]), model.w.dot(sp.class_means[1])};
    model.threshold = 0.5 * (model.projected_means[0] + model.projected_means[1]);

    if (options.threshold_policy == ThresholdPolicy::PriorWeighted) {
        const auto n = sp.class_counts[0] + sp.class_counts[1];
        const double gap = model.projected_means[1] - model.projected_means[0];
        if (n > 2 && gap > 0.0) {
            const double pooled_var =
                model.w.dot(sp.s_within * model.w) / static_cast<double>(n - 2);
            // Equal-variance Gaussian decision point; larger class pulls it away.
            model.threshold += pooled_var *
                               std::log(static_cast<double>(sp.class_counts[0]) /
                                        static_cast<double>(sp.class_counts[1])) / gap;
        }
    }

    model.fisher_j = fisher_criterion(sp, model.w, eps);
    return model;
}

RealVector generalized_eigen_direction(const ScatterPair& scatter, double epsilon) {
    RealMatrix reg = scatter.s_within;
    reg.diagonal().array() += epsilon;
    Eigen::GeneralizedSelfAdjointEigenSolver<RealMatrix> solver(scatter.s_between, reg);
    if (solver.info() != Eigen::Success)
        throw SingularMatrixError("generalized eigensolver failed; S_W + eps I not positive definite");
    const Eigen::Index top = solver.eigenvalues().size() - 1; // ascending order
    return orient(solver.eigenvectors().col(top), scatter);
}

double project(const FldaModel& model, const RealVector& x) {
    if (x.size() != model.dim()) throw ValidationError("project: feature dimension mismatch");
    return model.w.dot(model.standardizer.apply(x));
}

RealVector project_rows(const FldaModel& model, const RealMatrix& rows) {
    if (rows.cols() != model.dim()) throw ValidationError("project: feature dimension mismatch");
    return model.standardizer.apply(rows) * model.w;
}

ClassLabel classify_projection(const FldaModel& model, double y) {
    if (std::abs(y - model.threshold) < 1e-15) return ClassLabel::Separable;
    return y > model.threshold ? ClassLabel::Separable : ClassLabel::Entangled;
}

ClassLabel classify(const FldaModel& model, const RealVector& x) {
    return classify_projection(model, project(model, x));
}

std::int64_t ConfusionCounts::total() const {
    return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

std::int64_t ConfusionCounts::correct() const { return counts[0][0] + counts[1][1]; }

Metrics evaluate(const FldaModel& model, const RealMatrix& features,
                 std::span<const ClassLabel> labels) {
    check_rows(features, labels);
    const RealVector y = project_rows(model, features);
    Metrics m;
    for (Eigen::Index r = 0; r < y.size(); ++r) {
        const int actual = class_slot(labels[static_cast<std::size_t>(r)]);
        const int predicted = class_slot(classify_projection(model, y(r)));
        ++m.confusion.counts[actual][predicted];
    }
    m.accuracy = static_cast<double>(m.confusion.correct()) / static_cast<double>(m.confusion.total());
    m.threshold = model.threshold;
    m.fisher_j = model.fisher_j;
    return m;
}

// --- serialization ------------------------------------------------------------

namespace {

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

RealVector from_std(const std::vector<double>& v) {
    return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

} // namespace

nlohmann::json model_to_json(const FldaModel& model) {
    nlohmann::json doc;
    doc["w"] = to_std(model.w);
    doc["projected_means"] = {{"entangled", model.projected_means[0]},
                              {"separable", model.projected_means[1]}};
    doc["threshold"] = model.threshold;
    doc["epsilon"] = model.epsilon;
    doc["fisher_j"] = model.fisher_j;
    doc["standardizer"] = {{"mode", standardizer_name(model.standardizer.mode)},
                           {"shift", to_std(model.standardizer.shift)},
                           {"scale", to_std(model.standardizer.scale)}};
    doc["feature_names"] = model.feature_names;
    doc["label_convention"] = model.label_convention;
    return doc;
}

FldaModel model_from_json(const nlohmann::json& doc) {
    try {
        FldaModel m;
        m.w = from_std(doc.at("w").get<std::vector<double>>());
        m.projected_means = {doc.at("projected_means").at("entangled").get<double>(),
                             doc.at("projected_means").at("separable").get<double>()};
        m.threshold = doc.at("threshold").get<double>();
        m.epsilon = doc.at("epsilon").get<double>();
        m.fisher_j = doc.at("fisher_j").get<double>();
        const auto& st = doc.at("standardizer");
        m.standardizer.mode = parse_standardizer(st.at("mode").get<std::string>());
        m.standardizer.shift = from_std(st.at("shift").get<std::vector<double>>());
        m.standardizer.scale = from_std(st.at("scale").get<std::vector<double>>());
        m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
        m.label_convention = doc.at("label_convention").get<std::string>();
        if (m.w.size() == 0 || m.standardizer.dim() != m.w.size() ||
            m.standardizer.scale.size() != m.w.size() ||
            m.feature_names.size() != static_cast<std::size_t>(m.w.size()))
            throw IoError("model document has inconsistent dimensions");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed model document: ") + e.what());
    }
}

std::string serialize_model(const FldaModel& model) {
    return model_to_json(model).dump(2) + "\n";
}

FldaModel deserialize_model(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("model file is not valid JSON: ") + e.what());
    }
    return model_from_json(doc);
}

} // namespace qflda
