#pragma once

// Dense complex linear algebra shared by every other module.
//
// Operators are Eigen dynamic complex matrices. Subsystem bookkeeping is a
// DimList: the ordered factor dimensions of a tensor-product space, first
// factor most significant in the row-major basis index.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using DimList = std::vector<std::size_t>;

/// Eigenvalues at or below this are treated as exactly zero (rank and 0·log 0).
inline constexpr double kEigClamp = 1e-12;
/// Frobenius tolerance on ‖m − m†‖ accepted as Hermitian.
inline constexpr double kHermTol = 1e-9;
/// Default cap on total Hilbert-space dimension; override with QCORR_MAX_DIM.
inline constexpr std::size_t kDefaultMaxDim = 64;

/// Current total-dimension cap, honouring the QCORR_MAX_DIM environment variable.
std::size_t max_total_dim();

/// Product of the entries of `dims` (1 for an empty list).
std::size_t total_dim(std::span<const std::size_t> dims);

/// Throws DimensionError unless every entry is ≥ 1 and the product equals `n`.
void check_dims(std::span<const std::size_t> dims, std::size_t n);

bool all_finite(const ComplexMatrix& m);

/// Kronecker product. Throws DimensionOverflow past max_total_dim().
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// Reduced operator on the factors listed in `keep` (0-based, any order; the
/// result orders them ascending). Throws on inconsistent dims or empty `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Reorders tensor factors: factor `perm[k]` of the input becomes factor k of the output.
ComplexMatrix permute_factors(const ComplexMatrix& m, std::span<const std::size_t> dims,
                              std::span<const std::size_t> perm);
ComplexVector permute_factors(const ComplexVector& v, std::span<const std::size_t> dims,
                              std::span<const std::size_t> perm);

/// Frobenius norm of m − m†.
double hermiticity_defect(const ComplexMatrix& m);

struct EigenDecomposition {
    RealVector values;      ///< descending
    ComplexMatrix vectors;  ///< columns match `values`
};

/// Hermitian eigendecomposition. Input within kHermTol is symmetrized first;
/// anything further off throws NotHermitianError.
EigenDecomposition eigh(const ComplexMatrix& h);

/// Descending eigenvalues only.
RealVector eigvalsh(const ComplexMatrix& h);

/// Number of eigenvalues above kEigClamp.
std::size_t numerical_rank(const RealVector& eigenvalues);

/// f(h) for Hermitian h via its spectrum.
template <class F>
ComplexMatrix hermitian_function(const ComplexMatrix& h, F&& f) {
    const auto eig = eigh(h);
    RealVector mapped(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) mapped(i) = f(eig.values(i));
    return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

/// Square root of a positive-semidefinite operator (negative noise clamped to 0).
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// ½‖a − b‖₁ for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Frobenius norm of U†U − I.
double isometry_defect(const ComplexMatrix& u);

/// exp(i·h) for Hermitian h.
ComplexMatrix unitary_from_hermitian(const ComplexMatrix& h);

}  // namespace qcorr
