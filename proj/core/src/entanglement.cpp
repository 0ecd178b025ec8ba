#include "qcorr/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/SVD>

#include "qcorr/entropy.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

std::string_view to_string(EofMethod method) {
    switch (method) {
        case EofMethod::concurrence: return "concurrence";
        case EofMethod::koashi_winter: return "koashi_winter";
        case EofMethod::pure_state: return "pure_state";
    }
    return "unknown";
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dims() != DimList{2, 2})
        throw DimensionError("concurrence needs a two-qubit state with dims [2, 2]");
    // σ_y ⊗ σ_y
    ComplexMatrix flip = ComplexMatrix::Zero(4, 4);
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    // The λ_i are the singular values of √ρ (σ_y ⊗ σ_y) √ρ*; eigenvalues at the
    // clamp are dropped from √ρ so pure states keep full precision.
    const auto eig = eigh(rho.op());
    RealVector root_values(4);
    for (Eigen::Index i = 0; i < 4; ++i)
        root_values(i) = eig.values(i) > kEigClamp ? std::sqrt(eig.values(i)) : 0.0;
    const ComplexMatrix root = eig.vectors * root_values.asDiagonal() * eig.vectors.adjoint();
    const ComplexMatrix m = root * flip * root.conjugate();
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = sv(i);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

EofResult eof_two_qubit(const DensityMatrix& rho) {
    return {eof_from_concurrence(concurrence(rho)), EofMethod::concurrence, true, 0.0};
}

EofResult eof_pure(const PureState& psi, const Partition& part) {
    if (part.size() != 2) throw PartitionError("eof_pure needs a bipartite partition");
    const auto s = entropy_of(psi.density(), part, part.parties()[0].label);
    return {s, EofMethod::pure_state, true, 0.0};
}

EofResult eof_via_koashi_winter(const PureState& psi, const Partition& part,
                                const std::string& a, const std::string& measured,
                                const OptimizerConfig& cfg) {
    if (part.size() != 3)
        throw PartitionError("Koashi-Winter route needs a tripartite partition");
    const auto rho = psi.density();
    const double s_a = entropy_of(rho, part, a);
    const auto j = classical_correlation(rho, part, a, measured, cfg);
    // Never negative: J ≤ S(a) up to optimizer noise.
    return {std::max(0.0, s_a - j.value), EofMethod::koashi_winter, false, j.spread};
}

}  // namespace qcorr
