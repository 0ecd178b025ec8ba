#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
    return strides;
}

// Offsets into the full basis for every multi-index over the chosen factors.
std::vector<std::size_t> offsets_over(std::span<const std::size_t> dims,
                                      std::span<const std::size_t> strides,
                                      std::span<const std::size_t> factors) {
    std::size_t count = 1;
    for (auto f : factors) count *= dims[f];
    std::vector<std::size_t> out(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        std::size_t off = 0;
        for (std::size_t k = factors.size(); k-- > 0;) {
            const auto f = factors[k];
            off += (rem % dims[f]) * strides[f];
            rem /= dims[f];
        }
        out[idx] = off;
    }
    return out;
}

std::vector<std::size_t> permutation_map(std::span<const std::size_t> dims,
                                         std::span<const std::size_t> perm) {
    const std::size_t n = dims.size();
    if (perm.size() != n) throw DimensionError("permute_factors: permutation length mismatch");
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        if (p >= n || seen[p]) throw DimensionError("permute_factors: not a permutation");
        seen[p] = true;
    }
    std::vector<std::size_t> out_dims(n);
    for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
    const auto in_strides = strides_of(dims);
    const auto out_strides = strides_of(out_dims);
    const std::size_t total = total_dim(dims);
    std::vector<std::size_t> map(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t j = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto f = perm[k];
            j += ((i / in_strides[f]) % dims[f]) * out_strides[k];
        }
        map[i] = j;
    }
    return map;
}

}  // namespace

std::size_t max_total_dim() {
    if (const char* env = std::getenv("QCORR_MAX_DIM")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultMaxDim;
}

std::size_t total_dim(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

void check_dims(std::span<const std::size_t> dims, std::size_t n) {
    if (dims.empty()) throw DimensionError("empty dimension list");
    for (auto d : dims)
        if (d == 0) throw DimensionError("subsystem dimension must be at least 1");
    if (total_dim(dims) != n)
        throw DimensionError("dimension list product " + std::to_string(total_dim(dims)) +
                             " does not match operator size " + std::to_string(n));
}

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto rows = static_cast<std::size_t>(a.rows() * b.rows());
    const auto cols = static_cast<std::size_t>(a.cols() * b.cols());
    const auto cap = max_total_dim();
    if (rows > cap || cols > cap)
        throw DimensionOverflow("tensor product of size " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " exceeds the dimension cap " +
                                std::to_string(cap));
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (const auto& f : factors) out = tensor_product(out, f);
    return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
    ComplexMatrix m = tensor_product(ComplexMatrix(a), ComplexMatrix(b));
    return m.col(0);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (m.rows() != m.cols()) throw DimensionError("partial_trace: operator is not square");
    check_dims(dims, static_cast<std::size_t>(m.rows()));
    if (keep.empty()) throw DimensionError("partial_trace: empty keep set");

    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.back() >= dims.size())
        throw DimensionError("partial_trace: keep set has duplicates or out-of-range factors");

    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);

    const auto strides = strides_of(dims);
    const auto keep_off = offsets_over(dims, strides, kept);
    const auto trace_off = offsets_over(dims, strides, traced);

    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r)
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex acc{0.0, 0.0};
            for (auto t : trace_off)
                acc += m(static_cast<Eigen::Index>(keep_off[r] + t),
                         static_cast<Eigen::Index>(keep_off[c] + t));
            out(r, c) = acc;
        }
    return out;
}

ComplexMatrix permute_factors(const ComplexMatrix& m, std::span<const std::size_t> dims,
                              std::span<const std::size_t> perm) {
    if (m.rows() != m.cols()) throw DimensionError("permute_factors: operator is not square");
    check_dims(dims, static_cast<std::size_t>(m.rows()));
    const auto map = permutation_map(dims, perm);
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) = m(i, j);
    return out;
}

ComplexVector permute_factors(const ComplexVector& v, std::span<const std::size_t> dims,
                              std::span<const std::size_t> perm) {
    check_dims(dims, static_cast<std::size_t>(v.size()));
    const auto map = permutation_map(dims, perm);
    ComplexVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(map[i])) = v(i);
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).norm();
}

EigenDecomposition eigh(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw DimensionError("eigh: operator is not square");
    if (!h.allFinite()) throw NotHermitianError("eigh: non-finite entries");
    const double defect = hermiticity_defect(h);
    if (defect > kHermTol)
        throw NotHermitianError("eigh: ‖h − h†‖ = " + std::to_string(defect) +
                                " exceeds tolerance");
    const ComplexMatrix sym = (h + h.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw NotHermitianError("eigh: solver failed");
    // Eigen sorts ascending.
    return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

RealVector eigvalsh(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw DimensionError("eigvalsh: operator is not square");
    const double defect = hermiticity_defect(h);
    if (!(defect <= kHermTol))
        throw NotHermitianError("eigvalsh: ‖h − h†‖ = " + std::to_string(defect) +
                                " exceeds tolerance");
    const ComplexMatrix sym = (h + h.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().reverse();
}

std::size_t numerical_rank(const RealVector& eigenvalues) {
    return static_cast<std::size_t>((eigenvalues.array() > kEigClamp).count());
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
    return hermitian_function(h, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix diff = a - b;
    return 0.5 * eigvalsh((diff + diff.adjoint()) * 0.5).cwiseAbs().sum();
}

double isometry_defect(const ComplexMatrix& u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

ComplexMatrix unitary_from_hermitian(const ComplexMatrix& h) {
    const auto eig = eigh(h);
    ComplexVector phases(eig.values.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::polar(1.0, eig.values(i));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace qcorr
