#include <gtest/gtest.h>

#include "qcorr/entropy.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/measurement.hpp"
#include "support/oracles.hpp"

using namespace qcorr;

namespace {

const Partition kAB = Partition::per_factor(2);

DensityMatrix werner(double p) {
    const ComplexVector singlet = ket({0, 1, -1, 0}) / std::sqrt(2.0);
    ComplexMatrix m = p * singlet * singlet.adjoint() + (1 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
    return DensityMatrix(m, {2, 2});
}

double h2(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

}  // namespace

TEST(Povm, Validation) {
    EXPECT_NO_THROW(Povm::computational_basis(3));
    ComplexMatrix half = ComplexMatrix::Identity(2, 2) * 0.5;
    EXPECT_THROW(Povm({half}), PovmError);
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 2.0;
    neg(1, 1) = -1.0;
    ComplexMatrix comp = ComplexMatrix::Identity(2, 2) - neg;
    EXPECT_THROW(Povm({neg, comp}), PovmError);
    EXPECT_THROW(Povm({}), PovmError);
}

TEST(Povm, FromIsometryTrine) {
    ComplexMatrix v(3, 2);
    for (int k = 0; k < 3; ++k) {
        const double a = 2.0 * M_PI * k / 3.0;
        v(k, 0) = std::cos(a) * std::sqrt(2.0 / 3.0);
        v(k, 1) = std::sin(a) * std::sqrt(2.0 / 3.0);
    }
    const auto povm = Povm::from_isometry(v);
    EXPECT_EQ(povm.size(), 3u);
    ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
    for (const auto& e : povm.elements()) sum += e;
    EXPECT_LT((sum - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(ApplyPovm, BellComputationalBasis) {
    const auto rec = apply_povm(bell_state().density(), kAB, "B", Povm::computational_basis(2));
    ASSERT_EQ(rec.probs.size(), 2u);
    EXPECT_NEAR(rec.probs[0], 0.5, 1e-14);
    EXPECT_NEAR(rec.probs[1], 0.5, 1e-14);
    for (double s : rec.cond_entropies) EXPECT_NEAR(s, 0.0, 1e-12);
    ASSERT_TRUE(rec.cond_states[0].has_value());
    EXPECT_NEAR(rec.cond_states[0]->op()(0, 0).real(), 1.0, 1e-12);
}

TEST(ApplyPovm, ZeroProbabilityOutcomeSkipped) {
    const DensityMatrix prod(oracle::kron(ComplexMatrix::Identity(2, 2) * 0.5,
                                          ket({1, 0}) * ket({1, 0}).adjoint()),
                             {2, 2});
    const auto rec = apply_povm(prod, kAB, "B", Povm::computational_basis(2));
    EXPECT_NEAR(rec.probs[1], 0.0, 1e-15);
    EXPECT_FALSE(rec.cond_states[1].has_value());
}

TEST(ApplyPovm, MatchesIndexSumOracle) {
    Rng rng(5);
    const auto rho = random_density({3, 2}, 4, rng);
    const auto u = random_unitary(2, rng);
    const auto povm = Povm::projective(u);
    const auto rec = apply_povm(rho, kAB, "A", "B", povm);
    for (std::size_t i = 0; i < 2; ++i) {
        const ComplexMatrix block = oracle::conditional(rho.op(), povm.elements()[i], 3, 2);
        const double p = block.trace().real();
        EXPECT_NEAR(rec.probs[i], p, 1e-12);
        EXPECT_LT((rec.cond_states[i]->op() - block / p).norm(), 1e-10);
        EXPECT_NEAR(rec.cond_entropies[i], oracle::entropy_bits(oracle::hermitian_eigenvalues(block / p)), 1e-9);
    }
}

TEST(ClassicalCorrelation, WernerClosedForm) {
    const auto r = classical_correlation(werner(0.6), kAB, "A", "B");
    EXPECT_NEAR(r.value, 0.2780719051126377, 1e-6);
    EXPECT_NEAR(r.value, 1.0 - h2(0.8), 1e-6);
    EXPECT_TRUE(r.consistent);
}

TEST(QuantumDiscord, WernerClosedForm) {
    const double p = 0.6;
    const double l1 = (1 + 3 * p) / 4, l2 = (1 - p) / 4;
    const double s_ab = -l1 * std::log2(l1) - 3 * l2 * std::log2(l2);
    const double expected = (2.0 - s_ab) - (1.0 - h2((1 + p) / 2));
    EXPECT_NEAR(quantum_discord(werner(p), kAB, "A", "B").value, expected, 1e-6);
}

TEST(QuantumDiscord, BellProductAndClassicalQuantum) {
    const auto bell = bell_state().density();
    EXPECT_NEAR(classical_correlation(bell, kAB, "A", "B").value, 1.0, 1e-6);
    EXPECT_NEAR(quantum_discord(bell, kAB, "A", "B").value, 1.0, 1e-6);

    Rng rng(3);
    const auto a = random_density({2}, 2, rng), b = random_density({3}, 3, rng);
    const DensityMatrix prod(oracle::kron(a.op(), b.op()), {2, 3});
    EXPECT_NEAR(quantum_discord(prod, kAB, "A", "B").value, 0.0, 1e-6);

    // Σ p_i ρ_i ⊗ |i⟩⟨i| is classical on the measured side.
    ComplexMatrix cq = ComplexMatrix::Zero(6, 6);
    const double probs[3] = {0.2, 0.3, 0.5};
    for (int i = 0; i < 3; ++i) {
        const auto ri = random_density({2}, 2, rng);
        ComplexMatrix proj = ComplexMatrix::Zero(3, 3);
        proj(i, i) = 1.0;
        cq += probs[i] * oracle::kron(ri.op(), proj);
    }
    EXPECT_NEAR(quantum_discord(DensityMatrix(cq, {2, 3}), kAB, "A", "B").value, 0.0, 1e-5);
}

TEST(QuantumDiscord, PureStateEqualsEntropyOfMeasured) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto psi = random_pure({3, 2}, seed).density();
        const double s_b = entropy_of(psi, kAB, "B");
        EXPECT_NEAR(quantum_discord(psi, kAB, "A", "B").value, s_b, 1e-3);
    }
}

TEST(ClassicalCorrelation, AgreesWithGridOracle) {
    Rng rng(11);
    for (int i = 0; i < 5; ++i) {
        const auto rho = random_density({2, 2}, 1 + i % 4, rng);
        const double opt = classical_correlation(rho, kAB, "A", "B").value;
        const double grid = grid_oracle_qubit(rho, kAB, "A", "B");
        EXPECT_NEAR(opt, grid, 2e-3);
        EXPECT_GE(opt, grid - 1e-9);
    }
}

TEST(ClassicalCorrelation, PovmSearchNotBelowProjective) {
    const auto rho = random_density({2, 2}, 3, 21);
    OptimizerConfig cfg;
    const double proj = classical_correlation(rho, kAB, "A", "B", cfg).value;
    cfg.search = MeasurementSearch::rank_one_povm;
    const double povm = classical_correlation(rho, kAB, "A", "B", cfg).value;
    EXPECT_GE(povm, proj - 1e-4);
}

TEST(ClassicalCorrelation, DeterministicForSeed) {
    const auto rho = random_density({2, 3}, 3, 8);
    OptimizerConfig cfg;
    cfg.seed = 17;
    const auto a = classical_correlation(rho, kAB, "B", "A", cfg);
    const auto b = classical_correlation(rho, kAB, "B", "A", cfg);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.restarts_used, b.restarts_used);
}

TEST(ClassicalCorrelation, ArgmaxReproducesValue) {
    const auto rho = random_density({2, 2}, 2, 12);
    const auto r = classical_correlation(rho, kAB, "A", "B");
    EXPECT_NEAR(holevo_objective(rho, kAB, "A", "B", r.argmax), r.value, 1e-12);
}

TEST(ClassicalCorrelation, UnsupportedMeasuredDimension) {
    const auto rho = random_density({2, 5}, 2, 1);
    EXPECT_THROW(classical_correlation(rho, kAB, "A", "B"), UnsupportedError);
}

TEST(ClassicalCorrelation, DefaultRestarts) {
    EXPECT_EQ(default_restarts(2), 20u);
    EXPECT_EQ(default_restarts(3), 60u);
}
