#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qflda/error.hpp"
#include "qflda/measure.hpp"
#include "qflda/states.hpp"
#include "support/oracles.hpp"

using namespace qflda;

TEST(ObservableSet, Sizes) {
    EXPECT_EQ(ObservableSet::full(2).size(), 15u);
    EXPECT_EQ(ObservableSet::full(3).size(), 63u);
    EXPECT_EQ(ObservableSet::full(4).size(), 255u);
    EXPECT_EQ(ObservableSet::full(2).names().front(), "IX");
    EXPECT_EQ(ObservableSet::full(2).names().back(), "ZZ");
    // 3 * 3 single-letter + 3 * 9 two-letter strings on three qubits.
    EXPECT_EQ(ObservableSet::up_to_weight(3, 2).size(), 36u);
    EXPECT_EQ(ObservableSet::named("weight<=1", 2).size(), 6u);
    EXPECT_EQ(ObservableSet::named("full", 3).size(), 63u);
    EXPECT_THROW(ObservableSet::named("weight<=0", 2), ValidationError);
    EXPECT_THROW(ObservableSet::named("most", 2), ValidationError);
}

TEST(ObservableSet, RejectsBadLists) {
    EXPECT_THROW(ObservableSet(2, {PauliString::parse("II")}), ValidationError);
    EXPECT_THROW(ObservableSet(2, {PauliString::parse("XX"), PauliString::parse("XX")}), ValidationError);
    EXPECT_THROW(ObservableSet(2, {PauliString::parse("XXX")}), ValidationError);
    EXPECT_THROW(ObservableSet::from_names({"XZ", "Y"}), ValidationError);
}

TEST(ExactFeatures, WernerPattern) {
    const auto obs = ObservableSet::full(2);
    for (double p : {0.0, 0.5, 1.0}) {
        const auto x = exact_features(werner2({p}), obs);
        for (std::size_t k = 0; k < obs.size(); ++k) {
            const auto name = obs.strings()[k].str();
            const double expect = (name == "XX" || name == "YY" || name == "ZZ") ? -p : 0.0;
            EXPECT_NEAR(x(static_cast<Eigen::Index>(k)), expect, 1e-15) << name;
        }
    }
    EXPECT_TRUE(exact_features(DensityOperator::maximally_mixed(2), obs).isZero(0.0));
}

TEST(ExactFeatures, MatchesDenseTraceOnAcin) {
    const auto rho = pptes_acin({1.7, 0.6, 1.2});
    const auto obs = ObservableSet::full(3);
    const auto x = exact_features(rho, obs);
    for (std::size_t k = 0; k < obs.size(); ++k)
        EXPECT_NEAR(x(static_cast<Eigen::Index>(k)),
                    oracle::expectation(rho.matrix(), oracle::pauli_word(obs.strings()[k].str())), 1e-14);
}

TEST(SampledFeatures, DeterministicOutcomes) {
    ComplexMatrix zz = ComplexMatrix::Zero(4, 4);
    zz(0, 0) = 1.0;
    const DensityOperator rho(zz);
    const ObservableSet obs(2, {PauliString::parse("ZZ"), PauliString::parse("ZI")});
    RngStream rng(5);
    for (std::int64_t shots : {1, 7, 1000}) {
        const auto x = sampled_features(rho, obs, shots, rng);
        EXPECT_EQ(x(0), 1.0);
        EXPECT_EQ(x(1), 1.0);
    }
}

TEST(SampledFeatures, SeededAndAccurate) {
    const auto obs = ObservableSet::full(2);
    const auto rho = werner2({0.5});
    RngStream a(9), b(9);
    EXPECT_EQ(sampled_features(rho, obs, 512, a), sampled_features(rho, obs, 512, b));

    RngStream rng(123);
    const auto x = sampled_features(rho, obs, 1'000'000, rng);
    const auto zz = 14; // ZZ is last in base-4 order
    EXPECT_EQ(obs.strings()[zz].str(), "ZZ");
    EXPECT_NEAR(x(zz), -0.5, 3.0 * std::sqrt((1.0 - 0.25) / 1e6));
}

TEST(SampledFeatures, RequiresPositiveShots) {
    const auto obs = ObservableSet::full(2);
    RngStream rng(1);
    EXPECT_THROW(sampled_features(concurrence_state({0.8, 2.0}), obs, 0, rng), ValidationError);
}

TEST(Reconstruct, RecoversDensityMatrix) {
    for (int n = 1; n <= 3; ++n) {
        RngStream rng(static_cast<std::uint64_t>(n));
        const auto obs = ObservableSet::full(n);
        ComplexMatrix mix = ComplexMatrix::Zero(static_cast<Eigen::Index>(dimension_of(n)),
                                                static_cast<Eigen::Index>(dimension_of(n)));
        for (int k = 0; k < 3; ++k) mix += random_product_state(n, rng).matrix() / 3.0;
        const DensityOperator rho(mix);
        EXPECT_LE((reconstruct_from_features(exact_features(rho, obs), obs) - rho.matrix()).cwiseAbs().maxCoeff(),
                  1e-12);
    }
}

TEST(Standardizer, ZScoreAndConstantColumns) {
    RealMatrix train(4, 2);
    train << 1, 5, 2, 5, 3, 5, 4, 5;
    const auto s = Standardizer::fit(train, StandardizerMode::ZScore);
    EXPECT_DOUBLE_EQ(s.shift(0), 2.5);
    EXPECT_NEAR(s.scale(0), std::sqrt(1.25), 1e-15);
    EXPECT_DOUBLE_EQ(s.shift(1), 5.0);
    EXPECT_DOUBLE_EQ(s.scale(1), 1.0);
    const RealMatrix z = s.apply(train);
    EXPECT_NEAR(z.col(0).mean(), 0.0, 1e-15);
    EXPECT_TRUE(z.col(1).isZero(0.0));
    EXPECT_THROW(Standardizer::fit(train.topRows(1), StandardizerMode::ZScore), ValidationError);
}

TEST(Standardizer, MinMaxAndRoundTrip) {
    RealMatrix train(2, 1);
    train << 0, 1;
    const auto s = Standardizer::fit(train, StandardizerMode::MinMax);
    RealVector half(1);
    half << 0.5;
    EXPECT_DOUBLE_EQ(s.apply(half)(0), 0.5);

    RealMatrix data = RealMatrix::Random(20, 5) * 3.0;
    for (auto mode : {StandardizerMode::ZScore, StandardizerMode::MinMax, StandardizerMode::None}) {
        const auto st = Standardizer::fit(data, mode);
        EXPECT_LE((st.invert(st.apply(data)) - data).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_EQ(parse_standardizer(standardizer_name(mode)), mode);
    }
    EXPECT_THROW(parse_standardizer("l2"), ValidationError);
}
