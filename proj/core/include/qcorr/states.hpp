#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

using Rng = std::mt19937_64;

inline constexpr double kStateTol = 1e-9;

enum class ViolationKind { shape, non_finite, hermiticity, positivity, trace, dimension_cap };

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    double magnitude;  ///< measured size of the violation (e.g. trace error, -min eigenvalue)
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
    std::string summary() const;
};

/// Checks every density-matrix invariant and reports each failure with its magnitude.
ValidationReport validate(const ComplexMatrix& op, const DimList& dims);

class DensityMatrix;
ValidationReport validate(const DensityMatrix& rho);

/// Trace-one positive-semidefinite operator with its subsystem dimensions.
/// Construction validates; the stored operator is the Hermitian part of the input.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix op, DimList dims);

    const ComplexMatrix& op() const { return op_; }
    const DimList& dims() const { return dims_; }
    std::size_t dim() const { return static_cast<std::size_t>(op_.rows()); }

    /// Same operator with a different factorization of the space.
    DensityMatrix with_dims(DimList dims) const;

private:
    ComplexMatrix op_;
    DimList dims_;
};

/// Unit vector with subsystem dimensions.
class PureState {
public:
    PureState(ComplexVector vec, DimList dims);

    const ComplexVector& vec() const { return vec_; }
    const DimList& dims() const { return dims_; }
    std::size_t dim() const { return static_cast<std::size_t>(vec_.size()); }

    DensityMatrix density() const;

private:
    ComplexVector vec_;
    DimList dims_;
};

/// A named group of tensor factors (0-based indices into the DimList).
struct Party {
    std::string label;
    std::vector<std::size_t> factors;
};

/// Disjoint, exhaustive grouping of the tensor factors into labelled parties.
/// Party order carries the role: in bipartite calls the second party is the
/// measured one unless a label says otherwise.
class Partition {
public:
    Partition(std::vector<Party> parties, std::size_t n_factors);

    /// One party per factor, labelled A, B, C, ... in order.
    static Partition per_factor(std::size_t n_factors);

    const std::vector<Party>& parties() const { return parties_; }
    std::size_t size() const { return parties_.size(); }
    std::size_t n_factors() const { return n_factors_; }

    const Party& at(std::string_view label) const;
    bool contains(std::string_view label) const;
    std::size_t dim_of(std::string_view label, const DimList& dims) const;
    /// Throws PartitionError unless the partition covers exactly `dims`.
    void check(const DimList& dims) const;

private:
    std::vector<Party> parties_;
    std::size_t n_factors_;
};

/// Reduced state on the listed parties, one coarse factor per party in the order given.
DensityMatrix marginal(const DensityMatrix& rho, const Partition& part,
                       std::span<const std::string> labels);
DensityMatrix marginal(const DensityMatrix& rho, const Partition& part,
                       std::initializer_list<std::string> labels);

/// Canonical purification Σ_k √λ_k |v_k⟩|k⟩_E over the descending eigenbasis;
/// the environment is appended as the last factor with dimension rank(ρ).
PureState purify(const DensityMatrix& rho);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase correction).
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

PureState random_pure(const DimList& dims, Rng& rng);
PureState random_pure(const DimList& dims, std::uint64_t seed);

/// Induced-measure mixed state: Tr_anc of a Haar pure state on system ⊗ C^rank.
DensityMatrix random_density(const DimList& dims, std::size_t rank, Rng& rng);
DensityMatrix random_density(const DimList& dims, std::size_t rank, std::uint64_t seed);

/// Fixed 2×4 example: (|00⟩+|11⟩)/√2 on A ⊗ B_L, tensored with I/2 on B_R.
DensityMatrix paper_example_state();

/// (|00⟩ + |11⟩)/√2 on two qubits.
PureState bell_state();

/// |ψ⟩ = Σ_i c_i |i⟩ from a list of amplitudes.
ComplexVector ket(std::initializer_list<Complex> amplitudes);

}  // namespace qcorr
