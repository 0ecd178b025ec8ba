#include <gtest/gtest.h>

#include "qcorr/errors.hpp"
#include "qcorr/states.hpp"
#include "support/oracles.hpp"

using namespace qcorr;

TEST(Validate, AcceptsMaximallyMixed) {
    EXPECT_TRUE(validate(ComplexMatrix::Identity(4, 4) * 0.25, DimList{2, 2}).ok());
}

TEST(Validate, ReportsEachViolationKind) {
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    const auto r = validate(neg, DimList{2});
    EXPECT_TRUE(r.has(ViolationKind::positivity));
    EXPECT_FALSE(r.has(ViolationKind::trace));
    bool found = false;
    for (const auto& v : r.violations)
        if (v.kind == ViolationKind::positivity) {
            EXPECT_NEAR(v.magnitude, 0.5, 1e-12);
            found = true;
        }
    EXPECT_TRUE(found);

    EXPECT_TRUE(validate(ComplexMatrix::Identity(2, 2), DimList{2}).has(ViolationKind::trace));

    ComplexMatrix skew = ComplexMatrix::Identity(2, 2) * 0.5;
    skew(0, 1) = 0.1;
    EXPECT_TRUE(validate(skew, DimList{2}).has(ViolationKind::hermiticity));

    ComplexMatrix bad = ComplexMatrix::Identity(2, 2) * 0.5;
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_TRUE(validate(bad, DimList{2}).has(ViolationKind::non_finite));

    EXPECT_TRUE(validate(ComplexMatrix::Identity(4, 4) * 0.25, DimList{2, 3}).has(ViolationKind::shape));
    EXPECT_TRUE(validate(ComplexMatrix::Identity(128, 128) / 128.0, DimList{128})
                    .has(ViolationKind::dimension_cap));
}

TEST(DensityMatrix, ThrowsOnInvalid) {
    EXPECT_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2), DimList{2}), InvalidStateError);
    EXPECT_NO_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2) * 0.5, DimList{2}));
}

TEST(DensityMatrix, StoresHermitianPart) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
    m(0, 1) = Complex{0.0, 1e-11};
    const DensityMatrix rho(m, DimList{2});
    EXPECT_LT(hermiticity_defect(rho.op()), 1e-15);
}

TEST(PureState, RequiresUnitNorm) {
    EXPECT_THROW(PureState(ket({1, 1}), DimList{2}), InvalidStateError);
    EXPECT_NO_THROW(PureState(ket({1, 0}), DimList{2}));
}

TEST(Partition, PerFactorLabelsAndErrors) {
    const auto p = Partition::per_factor(3);
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p.parties()[2].label, "C");
    EXPECT_EQ(p.dim_of("B", DimList{2, 3, 4}), 3u);
    EXPECT_THROW(p.at("Z"), PartitionError);
    EXPECT_THROW(Partition({{"A", {0}}, {"B", {0}}}, 2), PartitionError);
    EXPECT_THROW(Partition({{"A", {0}}}, 2), PartitionError);
    EXPECT_THROW(p.check(DimList{2, 2}), PartitionError);
}

TEST(Marginal, OrdersFactorsAsRequested) {
    Rng rng(1);
    const auto a = random_density({2}, 2, rng);
    const auto b = random_density({3}, 3, rng);
    const DensityMatrix ab(tensor_product(a.op(), b.op()), DimList{2, 3});
    const auto p = Partition::per_factor(2);
    const auto ba = marginal(ab, p, {"B", "A"});
    EXPECT_EQ(ba.dims(), (DimList{3, 2}));
    EXPECT_LT((ba.op() - oracle::kron(b.op(), a.op())).norm(), 1e-12);
}

TEST(Marginal, GroupedParty) {
    const auto rho = paper_example_state().with_dims(DimList{2, 2, 2});
    const Partition p({{"A", {0}}, {"B", {1, 2}}}, 3);
    const auto b = marginal(rho, p, {"B"});
    EXPECT_EQ(b.dims(), (DimList{4}));
    EXPECT_LT((b.op() - ComplexMatrix::Identity(4, 4) * 0.25).norm(), 1e-14);
}

TEST(ExampleState, ExactEntries) {
    const auto rho = paper_example_state();
    EXPECT_EQ(rho.dims(), (DimList{2, 4}));
    const std::vector<std::pair<int, int>> nz{{0, 0}, {0, 6}, {1, 1}, {1, 7}, {6, 0}, {6, 6}, {7, 1}, {7, 7}};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const bool on = std::find(nz.begin(), nz.end(), std::pair{i, j}) != nz.end();
            EXPECT_EQ(rho.op()(i, j), Complex(on ? 0.25 : 0.0, 0.0)) << i << "," << j;
        }
}

TEST(ExampleState, EqualsBellTensorHalfIdentity) {
    const auto built = oracle::kron(bell_state().density().op(), ComplexMatrix::Identity(2, 2) * 0.5);
    EXPECT_LT((paper_example_state().op() - built).norm(), 1e-15);
}

TEST(Purify, ReproducesStateAndUsesRankEnvironment) {
    Rng rng(6);
    const auto rho = random_density({2, 3}, 2, rng);
    const auto psi = purify(rho);
    EXPECT_EQ(psi.dims(), (DimList{2, 3, 2}));
    const ComplexMatrix back = oracle::trace_second(psi.density().op(), 6, 2);
    EXPECT_LT((back - rho.op()).norm(), 1e-10);
}

TEST(RandomUnitary, IsUnitaryAndDeterministic) {
    Rng a(42), b(42);
    const auto u = random_unitary(5, a);
    EXPECT_LT(isometry_defect(u), 1e-12);
    EXPECT_TRUE(u.isApprox(random_unitary(5, b)));
}

TEST(RandomPure, MeanBlochVectorNearZero) {
    Rng rng(2025);
    const int n = 10000;
    double x = 0, y = 0, z = 0;
    for (int i = 0; i < n; ++i) {
        const auto v = random_pure(DimList{2}, rng).vec();
        const Complex c = std::conj(v(0)) * v(1);
        x += 2 * c.real();
        y += 2 * c.imag();
        z += std::norm(v(0)) - std::norm(v(1));
    }
    EXPECT_LT(std::abs(x / n), 0.05);
    EXPECT_LT(std::abs(y / n), 0.05);
    EXPECT_LT(std::abs(z / n), 0.05);
}

TEST(RandomDensity, RankAndValidity) {
    for (std::size_t rank = 1; rank <= 4; ++rank) {
        const auto rho = random_density(DimList{2, 2}, rank, 100 + rank);
        EXPECT_TRUE(validate(rho).ok());
        const auto ev = oracle::hermitian_eigenvalues(rho.op());
        std::size_t r = 0;
        for (double l : ev) r += l > 1e-10 ? 1 : 0;
        EXPECT_EQ(r, rank);
    }
}

TEST(RandomDensity, SeedReproducible) {
    EXPECT_TRUE(random_density(DimList{2, 3}, 3, 9).op().isApprox(random_density(DimList{2, 3}, 3, 9).op()));
}

TEST(RandomDensity, FullRankBeyondSquareRootOfCap) {
    const auto rho = random_density({6, 2}, 12, 3);
    EXPECT_TRUE(validate(rho).ok());
    EXPECT_GT(oracle::hermitian_eigenvalues(rho.op()).back(), 1e-12);
}
