#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::shape: return "shape";
        case ViolationKind::non_finite: return "non_finite";
        case ViolationKind::hermiticity: return "hermiticity";
        case ViolationKind::positivity: return "positivity";
        case ViolationKind::trace: return "trace";
        case ViolationKind::dimension_cap: return "dimension_cap";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << to_string(violations[i].kind) << " (" << violations[i].magnitude << ")";
        if (!violations[i].detail.empty()) os << ": " << violations[i].detail;
    }
    return os.str();
}

ValidationReport validate(const ComplexMatrix& op, const DimList& dims) {
    ValidationReport report;
    auto add = [&](ViolationKind k, double mag, std::string detail) {
        report.violations.push_back({k, mag, std::move(detail)});
    };

    if (op.rows() != op.cols() || op.rows() == 0) {
        add(ViolationKind::shape, 0.0, "operator must be square and non-empty");
        return report;
    }
    const auto n = static_cast<std::size_t>(op.rows());
    const bool dims_ok = !dims.empty() && std::none_of(dims.begin(), dims.end(),
                                                       [](std::size_t d) { return d == 0; });
    if (!dims_ok || total_dim(dims) != n)
        add(ViolationKind::shape, 0.0, "dimension list does not factor the operator");
    if (n > max_total_dim())
        add(ViolationKind::dimension_cap, static_cast<double>(n), "total dimension above cap");
    if (!op.allFinite()) {
        add(ViolationKind::non_finite, 0.0, "NaN or Inf entries");
        return report;
    }

    const double herm = hermiticity_defect(op);
    if (herm > kHermTol) add(ViolationKind::hermiticity, herm, "‖ρ − ρ†‖_F");

    const ComplexMatrix sym = (op + op.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kStateTol) add(ViolationKind::positivity, -min_eig, "minimum eigenvalue");

    const double tr_err = std::abs(op.trace() - Complex{1.0, 0.0});
    if (tr_err > kStateTol) add(ViolationKind::trace, tr_err, "|Tr ρ − 1|");
    return report;
}

ValidationReport validate(const DensityMatrix& rho) {
    return validate(rho.op(), rho.dims());
}

DensityMatrix::DensityMatrix(ComplexMatrix op, DimList dims) : dims_(std::move(dims)) {
    const auto report = validate(op, dims_);
    if (!report.ok()) throw InvalidStateError("invalid density matrix: " + report.summary());
    op_ = (op + op.adjoint()) * 0.5;
}

DensityMatrix DensityMatrix::with_dims(DimList dims) const {
    check_dims(dims, dim());
    return DensityMatrix(op_, std::move(dims));
}

PureState::PureState(ComplexVector vec, DimList dims) : vec_(std::move(vec)), dims_(std::move(dims)) {
    check_dims(dims_, static_cast<std::size_t>(vec_.size()));
    if (!vec_.allFinite()) throw InvalidStateError("pure state has non-finite amplitudes");
    const double norm_err = std::abs(vec_.norm() - 1.0);
    if (norm_err > kStateTol)
        throw InvalidStateError("pure state norm deviates from 1 by " + std::to_string(norm_err));
    if (dim() > max_total_dim()) throw DimensionOverflow("pure state dimension above cap");
}

DensityMatrix PureState::density() const {
    return DensityMatrix(vec_ * vec_.adjoint(), dims_);
}

Partition::Partition(std::vector<Party> parties, std::size_t n_factors)
    : parties_(std::move(parties)), n_factors_(n_factors) {
    if (parties_.empty()) throw PartitionError("partition has no parties");
    std::vector<int> owner(n_factors_, -1);
    for (std::size_t p = 0; p < parties_.size(); ++p) {
        const auto& party = parties_[p];
        if (party.label.empty()) throw PartitionError("party label must be non-empty");
        if (party.factors.empty())
            throw PartitionError("party '" + party.label + "' owns no factors");
        for (std::size_t q = 0; q < p; ++q)
            if (parties_[q].label == party.label)
                throw PartitionError("duplicate party label '" + party.label + "'");
        for (auto f : party.factors) {
            if (f >= n_factors_)
                throw PartitionError("party '" + party.label + "' references factor " +
                                     std::to_string(f) + " out of range");
            if (owner[f] != -1)
                throw PartitionError("factor " + std::to_string(f) + " assigned twice");
            owner[f] = static_cast<int>(p);
        }
    }
    for (std::size_t f = 0; f < n_factors_; ++f)
        if (owner[f] == -1) throw PartitionError("factor " + std::to_string(f) + " unassigned");
}

Partition Partition::per_factor(std::size_t n_factors) {
    std::vector<Party> parties;
    for (std::size_t i = 0; i < n_factors; ++i)
        parties.push_back({std::string(1, static_cast<char>('A' + i)), {i}});
    return Partition(std::move(parties), n_factors);
}

const Party& Partition::at(std::string_view label) const {
    for (const auto& p : parties_)
        if (p.label == label) return p;
    throw PartitionError("no party labelled '" + std::string(label) + "'");
}

bool Partition::contains(std::string_view label) const {
    return std::any_of(parties_.begin(), parties_.end(),
                       [&](const Party& p) { return p.label == label; });
}

std::size_t Partition::dim_of(std::string_view label, const DimList& dims) const {
    check(dims);
    std::size_t d = 1;
    for (auto f : at(label).factors) d *= dims[f];
    return d;
}

void Partition::check(const DimList& dims) const {
    if (dims.size() != n_factors_)
        throw PartitionError("partition covers " + std::to_string(n_factors_) +
                             " factors but the state has " + std::to_string(dims.size()));
}

DensityMatrix marginal(const DensityMatrix& rho, const Partition& part,
                       std::span<const std::string> labels) {
    part.check(rho.dims());
    if (labels.empty()) throw PartitionError("marginal: no parties requested");

    std::vector<std::size_t> order;  // requested factor order
    DimList coarse;
    for (const auto& label : labels) {
        const auto& party = part.at(label);
        std::size_t d = 1;
        for (auto f : party.factors) {
            if (std::find(order.begin(), order.end(), f) != order.end())
                throw PartitionError("marginal: party '" + label + "' requested twice");
            order.push_back(f);
            d *= rho.dims()[f];
        }
        coarse.push_back(d);
    }

    std::vector<std::size_t> kept = order;
    std::sort(kept.begin(), kept.end());
    ComplexMatrix reduced = kept.size() == rho.dims().size()
                                ? rho.op()
                                : partial_trace(rho.op(), rho.dims(), kept);

    // Factors now sit in ascending order; permute into the requested order.
    DimList kept_dims;
    for (auto f : kept) kept_dims.push_back(rho.dims()[f]);
    std::vector<std::size_t> perm;
    for (auto f : order)
        perm.push_back(static_cast<std::size_t>(
            std::find(kept.begin(), kept.end(), f) - kept.begin()));
    if (!std::is_sorted(perm.begin(), perm.end()))
        reduced = permute_factors(reduced, kept_dims, perm);
    return DensityMatrix(std::move(reduced), std::move(coarse));
}

DensityMatrix marginal(const DensityMatrix& rho, const Partition& part,
                       std::initializer_list<std::string> labels) {
    return marginal(rho, part, std::span<const std::string>(labels.begin(), labels.size()));
}

PureState purify(const DensityMatrix& rho) {
    const auto eig = eigh(rho.op());
    const std::size_t rank = std::max<std::size_t>(1, numerical_rank(eig.values));
    const auto d = static_cast<Eigen::Index>(rho.dim());
    const auto r = static_cast<Eigen::Index>(rank);

    ComplexVector psi = ComplexVector::Zero(d * r);
    double kept_weight = 0.0;
    for (Eigen::Index k = 0; k < r; ++k) kept_weight += std::max(0.0, eig.values(k));
    for (Eigen::Index k = 0; k < r; ++k) {
        const double w = std::sqrt(std::max(0.0, eig.values(k)) / kept_weight);
        for (Eigen::Index i = 0; i < d; ++i) psi(i * r + k) += w * eig.vectors(i, k);
    }
    DimList dims = rho.dims();
    dims.push_back(rank);
    return PureState(std::move(psi), std::move(dims));
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex{normal(rng), normal(rng)};
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex{1.0, 0.0};
    }
    return q;
}

PureState random_pure(const DimList& dims, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(total_dim(dims));
    if (static_cast<std::size_t>(n) > max_total_dim())
        throw DimensionOverflow("random_pure: dimension above cap");
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex{normal(rng), normal(rng)};
    v.normalize();
    return PureState(std::move(v), dims);
}

PureState random_pure(const DimList& dims, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure(dims, rng);
}

DensityMatrix random_density(const DimList& dims, std::size_t rank, Rng& rng) {
    const std::size_t d = total_dim(dims);
    if (rank < 1 || rank > d)
        throw std::invalid_argument("random_density: rank " + std::to_string(rank) +
                                    " outside [1, " + std::to_string(d) + "]");
    if (d > max_total_dim()) throw DimensionOverflow("random_density: dimension above cap");
    // Normalized d × rank Ginibre matrix M, read row-major: the coefficients of a
    // Haar pure state on system ⊗ ancilla, so ρ = M M† is its ancilla trace.
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto rows = static_cast<Eigen::Index>(d), cols = static_cast<Eigen::Index>(rank);
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> coeffs(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) coeffs(i, j) = Complex{normal(rng), normal(rng)};
    coeffs.normalize();
    ComplexMatrix rho = coeffs * coeffs.adjoint();
    return DensityMatrix(std::move(rho), dims);
}

DensityMatrix random_density(const DimList& dims, std::size_t rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(dims, rank, rng);
}

DensityMatrix paper_example_state() {
    // Nonzero entries of 4·ρ, indices 0-based in the |a⟩|b⟩ (2 × 4) basis.
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (auto [i, j] : {std::pair{0, 0}, {0, 6}, {1, 1}, {1, 7}, {6, 0}, {6, 6}, {7, 1}, {7, 7}})
        m(i, j) = 0.25;
    return DensityMatrix(std::move(m), {2, 4});
}

PureState bell_state() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState(ket({s, 0.0, 0.0, s}), {2, 2});
}

ComplexVector ket(std::initializer_list<Complex> amplitudes) {
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    Eigen::Index i = 0;
    for (const auto& a : amplitudes) v(i++) = a;
    return v;
}

}  // namespace qcorr
