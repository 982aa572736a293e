#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qflda/error.hpp"
#include "qflda/labeling.hpp"
#include "qflda/random.hpp"
#include "support/oracles.hpp"

using namespace qflda;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Cuts, CanonicalCount) {
    EXPECT_EQ(canonical_cuts(2).size(), 1u);
    EXPECT_EQ(canonical_cuts(3).size(), 3u);
    EXPECT_EQ(canonical_cuts(4).size(), 7u);
    for (const auto& cut : canonical_cuts(4)) EXPECT_EQ(cut.front(), 0);
    EXPECT_EQ(cut_descriptor({0}, 3), "A|BC");
    EXPECT_EQ(cut_descriptor({0, 2}, 3), "AC|B");
}

TEST(PptOracle, WernerClosedForm) {
    // Partial transpose spectrum of werner2(p): (1 - 3p)/4 once and (1 + p)/4 three times.
    // The first is the minimum for p >= 0; below zero the triple eigenvalue is smaller.
    RngStream rng(2024);
    for (int i = 0; i < 100; ++i) {
        const double p = uniform(rng, -1.0 / 3.0, 1.0);
        const auto pt = oracle::sorted_eigenvalues(oracle::partial_transpose(werner2({p}).matrix(), 2, {0}));
        std::vector<double> expect{(1.0 - 3.0 * p) / 4.0, (1.0 + p) / 4.0, (1.0 + p) / 4.0, (1.0 + p) / 4.0};
        std::sort(expect.begin(), expect.end());
        for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(pt[k], expect[k], 1e-12);
        EXPECT_NEAR(min_partial_transpose_eigenvalue(werner2({p}), {0}), expect[0], 1e-10);
        if (p >= 0) EXPECT_NEAR(min_partial_transpose_eigenvalue(werner2({p}), {0}), (1.0 - 3.0 * p) / 4.0, 1e-10);
    }
    EXPECT_NEAR(min_partial_transpose_eigenvalue(werner2({1.0 / 3.0}), {0}), 0.0, 1e-10);
}

TEST(PptOracle, GhzCrossingByBisection) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const auto rho = werner_ghz(3, mid);
        double m = 1.0;
        for (int q = 0; q < 3; ++q)
            m = std::min(m, oracle::min_eigenvalue(oracle::partial_transpose(rho.matrix(), 3, {q})));
        (m < 0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(lo, 0.2, 1e-6);
    EXPECT_DOUBLE_EQ(ghz_ppt_threshold(3), 0.2);
    EXPECT_DOUBLE_EQ(ghz_ppt_threshold(4), 1.0 / 9.0);
}

TEST(PptOracle, ReportMatchesDenseOracle) {
    const auto rho = werner_ghz(4, 0.3);
    const auto report = ppt_report(rho);
    ASSERT_EQ(report.min_eigenvalue.size(), 7u);
    for (const auto& cut : canonical_cuts(4)) {
        const double expect = oracle::min_eigenvalue(oracle::partial_transpose(rho.matrix(), 4, cut));
        EXPECT_NEAR(report.min_eigenvalue.at(cut_descriptor(cut, 4)), expect, 1e-12);
    }
    EXPECT_FALSE(report.is_ppt_all);
    EXPECT_TRUE(ppt_report(ppt_alternative()).is_ppt_all);
    EXPECT_TRUE(ppt_report(pptes_acin({2, 0.7, 1.4})).is_ppt_all);
}

TEST(Concurrence, AnalyticEndpoints) {
    EXPECT_EQ(concurrence_analytic({kPi / 2, kPi}), 1.0);
    EXPECT_EQ(concurrence_analytic({0.0, kPi}), 0.0);
    EXPECT_EQ(concurrence_analytic({0.0, 1.234}), 0.0);
    EXPECT_NEAR(concurrence_analytic({kPi / 2, kPi / 2}), std::sqrt(2.0) / 2.0, 1e-15);
}

TEST(Concurrence, WoottersAgreesWithSpinFlipOracle) {
    RngStream rng(77);
    for (int i = 0; i < 200; ++i) {
        const ConcurrenceParams cp{uniform(rng, 0.0, kPi), uniform(rng, 0.0, kPi)};
        const auto rho = concurrence_state(cp);
        EXPECT_NEAR(concurrence_wootters(rho), concurrence_analytic(cp), 1e-9);
    }
    // Mixed states: Werner closed form max(0, (3p - 1) / 2) and the dense oracle.
    for (double p : {-0.2, 0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const auto rho = werner2({p});
        EXPECT_NEAR(concurrence_wootters(rho), std::max(0.0, (3 * p - 1) / 2), 1e-9);
        EXPECT_NEAR(concurrence_wootters(rho), oracle::wootters_spin_flip(rho.matrix()), 1e-7);
    }
    EXPECT_NEAR(concurrence_wootters(DensityOperator::maximally_mixed(2)), 0.0, 1e-12);
    EXPECT_NEAR(concurrence_wootters(werner2({1.0})), 1.0, 1e-12);
    EXPECT_THROW(concurrence_wootters(werner_ghz(3, 0.5)), ValidationError);
}

TEST(Labels, PaperConvention) {
    EXPECT_EQ(assign_label(WernerParams{0.5}, LabelConvention::Paper), ClassLabel::Entangled);
    EXPECT_EQ(assign_label(WernerParams{0.2}, LabelConvention::Paper), ClassLabel::Separable);
    EXPECT_EQ(assign_label(WernerParams{1.0 / 3.0}, LabelConvention::Paper), ClassLabel::Separable);
    EXPECT_EQ(assign_label(WernerParams{0.15, 4}, LabelConvention::Paper), ClassLabel::Entangled);
    EXPECT_EQ(assign_label(WernerParams{0.21, 3}, LabelConvention::Paper), ClassLabel::Entangled);
    EXPECT_EQ(assign_label(ConcurrenceParams{0.0, 1.0}, LabelConvention::Paper), ClassLabel::Separable);
    EXPECT_EQ(assign_label(ConcurrenceParams{1.0, 1.0}, LabelConvention::Paper), ClassLabel::Entangled);
    EXPECT_EQ(assign_label(AcinParams{}, LabelConvention::Paper), ClassLabel::Entangled);
    EXPECT_EQ(assign_label(PptAltParams{}, LabelConvention::Paper), ClassLabel::Entangled);
}

TEST(Labels, ConventionsDivergeOnPptStates) {
    EXPECT_EQ(assign_label(PptAltParams{}, LabelConvention::PptOracle), ClassLabel::Separable);
    // PPT-entangled Acín state stays entangled under both conventions.
    EXPECT_EQ(assign_label(AcinParams{}, LabelConvention::PptOracle), ClassLabel::Entangled);
    // werner4 between the GHZ PPT onset and 1/7.
    EXPECT_EQ(assign_label(WernerParams{0.12, 4}, LabelConvention::PptOracle), ClassLabel::Entangled);
    EXPECT_EQ(assign_label(WernerParams{0.12, 4}, LabelConvention::Paper), ClassLabel::Separable);
    EXPECT_DOUBLE_EQ(werner_threshold(Family::Werner4, LabelConvention::PptOracle), 1.0 / 9.0);
}

TEST(Labels, ConventionNames) {
    EXPECT_EQ(parse_convention("paper"), LabelConvention::Paper);
    EXPECT_EQ(parse_convention("ppt-oracle"), LabelConvention::PptOracle);
    EXPECT_THROW(parse_convention("oracle"), ValidationError);
    EXPECT_EQ(label_from_int(-1), ClassLabel::Entangled);
    EXPECT_THROW(label_from_int(0), ValidationError);
}
