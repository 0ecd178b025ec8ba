#include <gtest/gtest.h>

#include "qcorr/entanglement.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/nelder_mead.hpp"
#include "support/oracles.hpp"

using namespace qcorr;

namespace {

// Minimum average concurrence Σ_i |ψ̃_iᵀ (σy⊗σy) ψ̃_i| over four-element
// decompositions ψ̃_i = Σ_j V_ij √λ_j |v_j⟩ of a rank-2 two-qubit state.
double brute_force_concurrence(const DensityMatrix& rho, std::uint64_t seed) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.op());
    const ComplexVector v0 = es.eigenvectors().col(3) * std::sqrt(std::max(0.0, es.eigenvalues()(3)));
    const ComplexVector v1 = es.eigenvectors().col(2) * std::sqrt(std::max(0.0, es.eigenvalues()(2)));
    ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const auto f = [&](const std::vector<double>& x) {
        ComplexMatrix g(4, 2);
        for (int i = 0; i < 8; ++i) g(i / 2, i % 2) = Complex{x[2 * i], x[2 * i + 1]};
        const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ() * ComplexMatrix::Identity(4, 2);
        double total = 0.0;
        for (int i = 0; i < 4; ++i) {
            const ComplexVector psi = q(i, 0) * v0 + q(i, 1) * v1;
            total += std::abs((psi.transpose() * yy * psi)(0, 0));
        }
        return total;
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    double best = 1e9;
    for (int restart = 0; restart < 30; ++restart) {
        std::vector<double> start(16);
        for (auto& s : start) s = n(rng);
        NelderMeadOptions opt;
        opt.max_iterations = 20000;
        opt.polish_rounds = 3;
        best = std::min(best, nelder_mead_minimize(f, start, opt).value);
    }
    return best;
}

DensityMatrix werner(double p) {
    const ComplexVector singlet = ket({0, 1, -1, 0}) / std::sqrt(2.0);
    ComplexMatrix m = p * singlet * singlet.adjoint() + (1 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
    return DensityMatrix(m, {2, 2});
}

}  // namespace

TEST(Concurrence, KnownStates) {
    EXPECT_NEAR(concurrence(bell_state().density()), 1.0, 1e-10);
    const auto prod = PureState(ket({1, 0, 0, 0}), {2, 2}).density();
    EXPECT_NEAR(concurrence(prod), 0.0, 1e-10);
    for (double p : {0.2, 1.0 / 3.0, 0.5, 0.9})
        EXPECT_NEAR(concurrence(werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-8);
}

TEST(Concurrence, PureStateFormula) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto psi = random_pure({2, 2}, seed);
        const auto& v = psi.vec();
        EXPECT_NEAR(concurrence(psi.density()), 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)), 1e-8);
    }
}

TEST(Concurrence, RequiresTwoQubits) {
    EXPECT_THROW(concurrence(random_density({2, 3}, 2, 1)), DimensionError);
}

TEST(Concurrence, MatchesDecompositionSearchOnRankTwo) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto rho = random_density({2, 2}, 2, seed);
        EXPECT_NEAR(concurrence(rho), brute_force_concurrence(rho, seed), 1e-3) << "seed " << seed;
    }
}

TEST(Eof, ConcurrenceMapping) {
    EXPECT_NEAR(eof_from_concurrence(0.0), 0.0, 1e-15);
    EXPECT_NEAR(eof_from_concurrence(1.0), 1.0, 1e-12);
    const double c = 0.6, x = (1 + std::sqrt(1 - c * c)) / 2;
    EXPECT_NEAR(eof_from_concurrence(c), -x * std::log2(x) - (1 - x) * std::log2(1 - x), 1e-12);
}

TEST(Eof, PureEqualsReducedEntropy) {
    const auto psi = random_pure({3, 4}, 4);
    const auto r = eof_pure(psi, Partition::per_factor(2));
    EXPECT_EQ(r.method, EofMethod::pure_state);
    EXPECT_NEAR(r.value, oracle::entropy_bits(oracle::hermitian_eigenvalues(oracle::trace_second(psi.density().op(), 3, 4))), 1e-9);
}

TEST(Eof, SymmetricUnderSwap) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto rho = random_density({2, 2}, 3, seed);
        const DensityMatrix swapped(permute_factors(rho.op(), DimList{2, 2}, std::vector<std::size_t>{1, 0}), {2, 2});
        EXPECT_NEAR(eof_two_qubit(rho).value, eof_two_qubit(swapped).value, 1e-9);
    }
}

TEST(KoashiWinter, MatchesConcurrenceRoute) {
    const auto part = Partition::per_factor(3);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto rho_ab = random_density({2, 2}, 2, seed);
        const auto psi = purify(rho_ab);  // A, B, E
        const auto rho = psi.density();
        const double e_ae = eof_two_qubit(marginal(rho, part, {"A", "C"})).value;
        const double j = classical_correlation(rho_ab, Partition::per_factor(2), "A", "B").value;
        EXPECT_NEAR(e_ae + j, entropy_of(rho, part, "A"), 3e-3);
        const auto kw = eof_via_koashi_winter(psi, part, "A", "B");
        EXPECT_FALSE(kw.certified);
        EXPECT_EQ(kw.method, EofMethod::koashi_winter);
        EXPECT_NEAR(kw.value, e_ae, 3e-3);
    }
}
