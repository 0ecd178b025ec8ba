#include <gtest/gtest.h>

#include "qcorr/entropy.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/monogamy.hpp"
#include "support/oracles.hpp"

using namespace qcorr;

namespace {

const Partition kAB = Partition::per_factor(2);
const Partition kABE = Partition::per_factor(3);

}  // namespace

TEST(Classify, ExampleState) {
    const auto v = classify_saturation(paper_example_state(), kAB);
    EXPECT_EQ(v.verdict, SaturationCase::saturates_a_sufficient);
    EXPECT_FALSE(v.saturates_b);
    EXPECT_NEAR(v.gap_a, 0.0, 1e-9);
    EXPECT_NEAR(v.gap_b, -2.0, 1e-9);
}

TEST(Classify, BellPrefersSaturatesB) {
    const auto v = classify_saturation(bell_state().density(), kAB);
    EXPECT_TRUE(v.saturates_b);
    EXPECT_TRUE(v.saturates_a_sufficient);
    EXPECT_EQ(v.verdict, SaturationCase::saturates_b);
}

TEST(Classify, GenericStatesNeither) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        EXPECT_EQ(classify_saturation(random_density({2, 2}, 4, seed), kAB).verdict, SaturationCase::neither);
}

TEST(Structure, ExampleStateFactors) {
    const auto outcome = extract_structure(paper_example_state(), kAB, "B");
    ASSERT_TRUE(std::holds_alternative<StructureWitness>(outcome));
    const auto& w = std::get<StructureWitness>(outcome);
    EXPECT_LE(w.reconstruction_error, 1e-6);
    EXPECT_TRUE(w.full_decomposition);
    EXPECT_EQ(w.phi.dims(), (DimList{2, 2}));
    const auto& v = w.phi.vec();
    EXPECT_NEAR(2.0 * std::abs(v(0) * v(3) - v(1) * v(2)), 1.0, 1e-9);
    EXPECT_NEAR(w.rho_isolated.op()(0, 0).real(), 0.5, 1e-9);
    EXPECT_LT(isometry_defect(w.embedding), 1e-9);
}

TEST(Structure, ConstructedRoundTripAndDecoupledPurifier) {
    const std::vector<std::array<std::size_t, 3>> shapes{{2, 2, 2}, {2, 2, 4}, {3, 2, 2}, {2, 3, 3}};
    std::uint64_t seed = 1;
    for (const auto& s : shapes)
        for (int rep = 0; rep < 3; ++rep, ++seed) {
            const auto rho = constructed_saturating_state(s[0], s[1], s[2], seed);
            const auto v = classify_saturation(rho, kAB);
            EXPECT_EQ(v.verdict, SaturationCase::saturates_b);
            const auto outcome = structure_extract(rho, kAB);
            ASSERT_TRUE(std::holds_alternative<StructureWitness>(outcome));
            const auto& w = std::get<StructureWitness>(outcome);
            EXPECT_EQ(w.split_party, "A");
            EXPECT_LE(w.reconstruction_error, 1e-6);
            EXPECT_EQ(w.phi.dims()[0], s[1]);
            // the purifying system holds no correlation with B
            const auto psi = purify(rho).density();
            EXPECT_LE(mutual_information(psi, kABE, "C", "B"), 1e-6);
        }
}

TEST(Structure, GenericStateFails) {
    const auto outcome = structure_extract(random_density({2, 2}, 3, 5), kAB);
    ASSERT_TRUE(std::holds_alternative<StructureFailure>(outcome));
    EXPECT_FALSE(std::get<StructureFailure>(outcome).reason.empty());
}

TEST(Structure, ForcedSplitOnNonSaturatingReportsPair) {
    const auto outcome = extract_structure(random_density({2, 2}, 2, 6), kAB, "A");
    ASSERT_TRUE(std::holds_alternative<StructureFailure>(outcome));
    EXPECT_GT(std::get<StructureFailure>(outcome).defect, 1e-6);
}

TEST(Discord, ShortcutsAgreeWithOptimizer) {
    // measured dimension 4 with S(B) − S(A) = S(AB)
    const auto rho = paper_example_state();
    const auto fast = discord(rho, kAB, "A", "B");
    EXPECT_EQ(fast.method, DiscordMethod::structure_reduction);
    EXPECT_NEAR(fast.value, 1.0, 3e-3);
    const auto slow = discord(rho, kAB, "A", "B", {}, false);
    EXPECT_EQ(slow.method, DiscordMethod::optimized);
    EXPECT_NEAR(slow.value, 1.0, 5e-3);

    const auto sat = constructed_saturating_state(2, 2, 4, 3).with_dims({4, 4});
    const auto flipped = DensityMatrix(permute_factors(sat.op(), DimList{4, 4}, std::vector<std::size_t>{1, 0}), {4, 4});
    // measuring the split side of a saturates_b state
    const auto bound = discord(flipped, kAB, "B", "A");
    EXPECT_EQ(bound.method, DiscordMethod::saturation_bound);
    EXPECT_NEAR(bound.value, entropy_of(flipped, kAB, "A"), 1e-9);
}

TEST(Tradeoff, PureTripartiteIdentity) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = tradeoff_pure(random_pure({2, 2, 2}, seed), kABE);
        EXPECT_LE(std::abs(r.defect), 3e-3);
        EXPECT_NEAR(r.residual, r.classical_eb, 3e-3);
    }
}

TEST(Tradeoff, ResidualCapacityIsPurifierCorrelation) {
    const auto rho = random_density({2, 2}, 2, 31);
    const auto psi = purify(rho).density();
    const double j_eb = classical_correlation(psi, kABE, "C", "B").value;
    EXPECT_NEAR(residual_capacity(rho, kAB), j_eb, 3e-3);
}

TEST(Inequality, MixedSlackNonNegativePureTight) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = tripartite_inequality(random_density({2, 2, 2}, 2, seed), kABE);
        EXPECT_GE(r.slack, -3e-3);
        EXPECT_NEAR(r.lhs - r.rhs, -r.slack, 1e-12);
    }
    const auto pure = tripartite_inequality(random_pure({2, 2, 2}, 9).density(), kABE);
    EXPECT_LE(std::abs(pure.slack), 3e-3);
}

TEST(EqualityChain, ExampleState) {
    const auto report = equality_chain_check(paper_example_state(), kAB);
    ASSERT_EQ(report.entries.size(), 5u);
    for (const auto& e : report.entries) EXPECT_NEAR(e.value, 1.0, 3e-3) << e.name;
    EXPECT_LE(report.max_deviation, 3e-3);
    EXPECT_LE(report.witness.reconstruction_error, 1e-6);
}

TEST(EqualityChain, RejectsGenericState) {
    EXPECT_THROW(equality_chain_check(random_density({2, 2}, 4, 3), kAB), std::invalid_argument);
}

TEST(Strictness, SmallScanPositive) {
    StrictnessOptions opt;
    opt.n_samples = 15;
    const auto r = two_qubit_strictness_scan(opt);
    EXPECT_EQ(r.evaluated, 15u);
    EXPECT_GT(r.min_gap_a, 0.0);
    EXPECT_GT(r.min_gap_b, 0.0);
    std::size_t total = 0;
    for (auto c : r.histogram) total += c;
    EXPECT_EQ(total, r.evaluated);
}

TEST(Strictness, SamplesAreFullRankAndSeeded) {
    StrictnessOptions opt;
    const auto a = strictness_sample(opt, 4);
    EXPECT_TRUE(a.op().isApprox(strictness_sample(opt, 4).op()));
    EXPECT_GT(oracle::hermitian_eigenvalues(a.op()).back(), 1e-12);
    opt.near_pure_weight = 0.01;
    const auto ev = oracle::hermitian_eigenvalues(strictness_sample(opt, 4).op());
    EXPECT_NEAR(ev[0], 0.99, 1e-9);
    EXPECT_NEAR(ev[1], 0.01, 1e-9);
}
