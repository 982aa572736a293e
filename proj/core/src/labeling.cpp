#include "qflda/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qflda {

ClassLabel label_from_int(int value) {
    if (value == -1) return ClassLabel::Entangled;
    if (value == 1) return ClassLabel::Separable;
    throw ValidationError("class label must be -1 or +1, got " + std::to_string(value));
}

std::string_view convention_name(LabelConvention c) {
    return c == LabelConvention::Paper ? "paper" : "ppt-oracle";
}

LabelConvention parse_convention(std::string_view name) {
    if (name == "paper") return LabelConvention::Paper;
    if (name == "ppt-oracle") return LabelConvention::PptOracle;
    throw ValidationError("unknown label convention '" + std::string(name) + "'");
}

std::vector<std::vector<int>> canonical_cuts(int num_qubits) {
    std::vector<std::vector<int>> cuts;
    if (num_qubits < 2) return cuts;
    const unsigned full = (1U << num_qubits) - 1U;
    // bit q of `mask` selects qubit q; qubit 0 always included
    for (unsigned mask = 1; mask < full; mask += 2) {
        std::vector<int> subset;
        for (int q = 0; q < num_qubits; ++q)
            if (mask & (1U << q)) subset.push_back(q);
        cuts.push_back(std::move(subset));
    }
    return cuts;
}

std::string cut_descriptor(const std::vector<int>& subset, int num_qubits) {
    std::string left, right;
    for (int q = 0; q < num_qubits; ++q) {
        const char name = static_cast<char>('A' + q);
        if (std::find(subset.begin(), subset.end(), q) != subset.end())
            left.push_back(name);
        else
            right.push_back(name);
    }
    return left + "|" + right;
}

double min_partial_transpose_eigenvalue(const DensityOperator& rho,
                                        const std::vector<int>& subset) {
    return hermitian_eigenvalues(partial_transpose(rho, subset))(0);
}

PptReport ppt_report(const DensityOperator& rho) {
    PptReport report;
    report.overall_min = std::numeric_limits<double>::infinity();
    for (const auto& cut : canonical_cuts(rho.num_qubits())) {
        const double ev = min_partial_transpose_eigenvalue(rho, cut);
        report.min_eigenvalue[cut_descriptor(cut, rho.num_qubits())] = ev;
        report.overall_min = std::min(report.overall_min, ev);
    }
    if (report.min_eigenvalue.empty()) report.overall_min = hermitian_eigenvalues(rho.matrix())(0);
    report.is_ppt_all = report.overall_min >= -kPsdTolerance;
    return report;
}

double concurrence_analytic(const ConcurrenceParams& params) {
    params.validate();
    return std::sin(params.theta0) * std::sin(params.theta1 / 2.0);
}

double concurrence_wootters(const DensityOperator& rho) {
    if (rho.num_qubits() != 2) throw ValidationError("concurrence requires a two-qubit state");
    // Decompose rho = V V^dagger with V's columns sqrt(lambda_k)|v_k>. The Wootters
    // lambdas are the singular values of tau = V^T (Y (x) Y) V, which avoids taking
    // square roots of near-zero eigenvalues of the non-Hermitian rho * rho_tilde.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho.matrix());
    const RealVector& vals = eig.eigenvalues();
    const double cutoff = 64.0 * std::numeric_limits<double>::epsilon() * std::max(vals.maxCoeff(), 1.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < vals.size(); ++k)
        if (vals(k) > cutoff) keep.push_back(k);
    ComplexMatrix v(4, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        v.col(static_cast<Eigen::Index>(j)) = std::sqrt(vals(keep[j])) * eig.eigenvectors().col(keep[j]);

    const ComplexMatrix yy = pauli_string_operator(PauliString::parse("YY"));
    const ComplexMatrix tau = v.transpose() * yy * v;
    Eigen::JacobiSVD<ComplexMatrix> svd(tau);
    RealVector s = svd.singularValues(); // descending
    double c = s.size() > 0 ? s(0) : 0.0;
    for (Eigen::Index k = 1; k < s.size(); ++k) c -= s(k);
    return std::clamp(c, 0.0, 1.0);
}

double ghz_ppt_threshold(int num_qubits) {
    return 1.0 / (1.0 + std::ldexp(1.0, num_qubits - 1));
}

double werner_threshold(Family family, LabelConvention convention,
                        const PaperThresholds& thresholds) {
    const bool paper = convention == LabelConvention::Paper;
    switch (family) {
    case Family::Werner2: return paper ? thresholds.werner2 : 1.0 / 3.0;
    case Family::Werner3: return paper ? thresholds.werner3 : ghz_ppt_threshold(3);
    case Family::Werner4: return paper ? thresholds.werner4 : ghz_ppt_threshold(4);
    default: throw ValidationError("no mixing threshold for family " + std::string(family_name(family)));
    }
}

ClassLabel assign_label(const FamilyParams& params, LabelConvention convention,
                        const PaperThresholds& thresholds) {
    const Family family = family_of(params);
    if (family == Family::PptesAcin) return ClassLabel::Entangled; // bound entangled by construction

    if (convention == LabelConvention::PptOracle)
        return ppt_report(build_state(params)).is_ppt_all ? ClassLabel::Separable
                                                          : ClassLabel::Entangled;

    switch (family) {
    case Family::Werner2:
    case Family::Werner3:
    case Family::Werner4: {
        const auto& w = std::get<WernerParams>(params);
        w.validate();
        return w.p > werner_threshold(family, convention, thresholds) ? ClassLabel::Entangled
                                                                      : ClassLabel::Separable;
    }
    case Family::Concurrence:
        return concurrence_analytic(std::get<ConcurrenceParams>(params)) > 1e-12
                   ? ClassLabel::Entangled
                   : ClassLabel::Separable;
    case Family::PptAlt:
    case Family::Biseparable: return ClassLabel::Entangled;
    case Family::ProductSep: return ClassLabel::Separable;
    case Family::PptesAcin: break;
    }
    return ClassLabel::Entangled;
}

} // namespace qflda
