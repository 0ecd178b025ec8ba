#include "qcorr/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcorr/entropy.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/nelder_mead.hpp"

namespace qcorr {

namespace {

// Σ_j −μ_j log₂(μ_j / p) for a PSD block σ with trace p: p · S(σ / p).
double weighted_conditional_entropy(const ComplexMatrix& sigma, double p) {
    if (p <= kProbClamp) return 0.0;
    double s = 0.0;
    auto term = [&](double mu) {
        if (mu / p > kEigClamp) s -= mu * std::log2(mu / p);
    };
    if (sigma.rows() == 1) return 0.0;
    if (sigma.rows() == 2) {
        const double a = sigma(0, 0).real();
        const double d = sigma(1, 1).real();
        const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(sigma(0, 1)));
        term(0.5 * (a + d) + half_gap);
        term(0.5 * (a + d) - half_gap);
        return s;
    }
    const ComplexMatrix sym = (sigma + sigma.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) term(solver.eigenvalues()(i));
    return s;
}

// Bipartite state in canonical order: unmeasured factor first, measured second.
struct Problem {
    ComplexMatrix rho;
    Eigen::Index da = 1;
    Eigen::Index db = 1;
    double s_a = 0.0;

    Problem(const DensityMatrix& rho_ab)
        : rho(rho_ab.op()),
          da(static_cast<Eigen::Index>(rho_ab.dims()[0])),
          db(static_cast<Eigen::Index>(rho_ab.dims()[1])) {
        s_a = von_neumann_entropy(
            partial_trace(rho, rho_ab.dims(), std::vector<std::size_t>{0}));
    }

    // Tr_B((I ⊗ E) ρ)
    ComplexMatrix conditional_block(const ComplexMatrix& e) const {
        ComplexMatrix out = ComplexMatrix::Zero(da, da);
        for (Eigen::Index a = 0; a < da; ++a)
            for (Eigen::Index ap = 0; ap < da; ++ap) {
                Complex acc{0.0, 0.0};
                for (Eigen::Index b = 0; b < db; ++b)
                    for (Eigen::Index bp = 0; bp < db; ++bp)
                        acc += e(b, bp) * rho(a * db + bp, ap * db + b);
                out(a, ap) = acc;
            }
        return out;
    }

    // (I ⊗ ⟨u|) ρ (I ⊗ |u⟩) for the rank-one element |u⟩⟨u|.
    ComplexMatrix rank_one_block(const ComplexVector& u) const {
        ComplexMatrix t(da * db, da);
        for (Eigen::Index row = 0; row < da * db; ++row)
            for (Eigen::Index ap = 0; ap < da; ++ap) {
                Complex acc{0.0, 0.0};
                for (Eigen::Index bp = 0; bp < db; ++bp) acc += rho(row, ap * db + bp) * u(bp);
                t(row, ap) = acc;
            }
        ComplexMatrix out(da, da);
        for (Eigen::Index a = 0; a < da; ++a)
            for (Eigen::Index ap = 0; ap < da; ++ap) {
                Complex acc{0.0, 0.0};
                for (Eigen::Index b = 0; b < db; ++b) acc += std::conj(u(b)) * t(a * db + b, ap);
                out(a, ap) = acc;
            }
        return out;
    }

    // Holevo objective for rank-one elements |u_k⟩⟨u_k| given as columns.
    double objective_rank_one(const ComplexMatrix& columns) const {
        double cond = 0.0;
        for (Eigen::Index k = 0; k < columns.cols(); ++k) {
            const ComplexMatrix sigma = rank_one_block(columns.col(k));
            cond += weighted_conditional_entropy(sigma, sigma.trace().real());
        }
        return s_a - cond;
    }
};

std::size_t parameter_count(MeasurementSearch search, std::size_t d, std::size_t outcomes) {
    return search == MeasurementSearch::projective ? d * d : 2 * outcomes * d;
}

ComplexMatrix hermitian_from_params(const std::vector<double>& x, Eigen::Index d) {
    ComplexMatrix h(d, d);
    std::size_t p = 0;
    for (Eigen::Index i = 0; i < d; ++i) h(i, i) = x[p++];
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            h(i, j) = Complex{x[p], x[p + 1]};
            h(j, i) = std::conj(h(i, j));
            p += 2;
        }
    return h;
}

// Columns are the rank-one measurement vectors u_k.
ComplexMatrix measurement_vectors(const std::vector<double>& x, MeasurementSearch search,
                                  Eigen::Index d, Eigen::Index outcomes) {
    if (search == MeasurementSearch::projective)
        return unitary_from_hermitian(hermitian_from_params(x, d));

    ComplexMatrix m(outcomes, d);
    std::size_t p = 0;
    for (Eigen::Index i = 0; i < outcomes; ++i)
        for (Eigen::Index j = 0; j < d; ++j, p += 2) m(i, j) = Complex{x[p], x[p + 1]};
    // Polar factor V = M (M†M)^{-1/2} is the nearest isometry.
    const ComplexMatrix gram = m.adjoint() * m;
    const ComplexMatrix inv_sqrt =
        hermitian_function(gram, [](double v) { return 1.0 / std::sqrt(std::max(v, 1e-300)); });
    const ComplexMatrix v = m * inv_sqrt;
    return v.adjoint();  // column k = (row k of V)†
}

Povm povm_from_vectors(const ComplexMatrix& columns) {
    std::vector<ComplexMatrix> elements;
    for (Eigen::Index k = 0; k < columns.cols(); ++k)
        elements.push_back(columns.col(k) * columns.col(k).adjoint());
    return Povm(std::move(elements));
}

std::vector<double> random_start(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    std::vector<double> x(n);
    for (auto& v : x) v = uni(rng);
    return x;
}

void check_measured_dim(std::size_t d) {
    if (d > kMaxMeasuredDim)
        throw UnsupportedError("measured subsystem has dimension " + std::to_string(d) +
                               "; direct optimization supports at most " +
                               std::to_string(kMaxMeasuredDim));
}

std::string other_party(const Partition& part, const std::string& measured) {
    if (part.size() != 2)
        throw PartitionError("bipartite form needs exactly two parties, got " +
                             std::to_string(part.size()));
    part.at(measured);
    return part.parties()[0].label == measured ? part.parties()[1].label
                                               : part.parties()[0].label;
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw PovmError("POVM has no elements");
    const auto d = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : elements_) {
        if (e.rows() != d || e.cols() != d) throw PovmError("POVM elements differ in shape");
        if (hermiticity_defect(e) > kStateTol) throw PovmError("POVM element is not Hermitian");
        if (eigvalsh(e).minCoeff() < -kStateTol) throw PovmError("POVM element is not positive");
        sum += e;
    }
    const double defect = (sum - ComplexMatrix::Identity(d, d)).norm();
    if (defect > kStateTol)
        throw PovmError("POVM elements sum to identity only within " + std::to_string(defect));
}

Povm Povm::projective(const ComplexMatrix& unitary) {
    if (unitary.rows() != unitary.cols() || isometry_defect(unitary) > kStateTol)
        throw PovmError("projective measurement needs a unitary");
    return povm_from_vectors(unitary);
}

Povm Povm::computational_basis(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return projective(ComplexMatrix::Identity(n, n));
}

Povm Povm::from_isometry(const ComplexMatrix& isometry) {
    if (isometry_defect(isometry) > kStateTol) throw PovmError("from_isometry: V†V ≠ I");
    return povm_from_vectors(isometry.adjoint());
}

MeasurementRecord apply_povm(const DensityMatrix& rho, const Partition& part,
                             const std::string& unmeasured, const std::string& measured,
                             const Povm& povm) {
    const auto rho_ab = marginal(rho, part, {unmeasured, measured});
    if (povm.dim() != rho_ab.dims()[1])
        throw DimensionError("POVM acts on dimension " + std::to_string(povm.dim()) +
                             " but the measured party has dimension " +
                             std::to_string(rho_ab.dims()[1]));
    const Problem problem(rho_ab);
    MeasurementRecord rec;
    for (const auto& e : povm.elements()) {
        const ComplexMatrix sigma = problem.conditional_block(e);
        const double p = sigma.trace().real();
        rec.probs.push_back(p);
        if (p > kProbClamp) {
            rec.cond_states.emplace_back(DensityMatrix(sigma / p, {rho_ab.dims()[0]}));
            rec.cond_entropies.push_back(weighted_conditional_entropy(sigma, p) / p);
        } else {
            rec.cond_states.emplace_back(std::nullopt);
            rec.cond_entropies.push_back(0.0);
        }
    }
    return rec;
}

MeasurementRecord apply_povm(const DensityMatrix& rho, const Partition& part,
                             const std::string& measured, const Povm& povm) {
    return apply_povm(rho, part, other_party(part, measured), measured, povm);
}

double holevo_objective(const DensityMatrix& rho, const Partition& part,
                        const std::string& unmeasured, const std::string& measured,
                        const Povm& povm) {
    const auto rec = apply_povm(rho, part, unmeasured, measured, povm);
    double cond = 0.0;
    for (std::size_t i = 0; i < rec.probs.size(); ++i) cond += rec.probs[i] * rec.cond_entropies[i];
    return entropy_of(rho, part, unmeasured) - cond;
}

std::size_t default_restarts(std::size_t d) {
    return d <= 2 ? 20 : 60;
}

OptimizationResult classical_correlation(const DensityMatrix& rho, const Partition& part,
                                         const std::string& unmeasured,
                                         const std::string& measured,
                                         const OptimizerConfig& cfg) {
    const auto rho_ab = marginal(rho, part, {unmeasured, measured});
    const std::size_t d = rho_ab.dims()[1];
    check_measured_dim(d);

    OptimizationResult result;
    if (d == 1) {
        result.argmax = Povm::computational_basis(1);
        result.value = 0.0;
        return result;
    }

    const Problem problem(rho_ab);
    const auto di = static_cast<Eigen::Index>(d);
    const std::size_t outcomes =
        cfg.search == MeasurementSearch::projective ? d
                                                    : (cfg.povm_outcomes ? cfg.povm_outcomes : d * d);
    if (outcomes < d) throw std::invalid_argument("POVM search needs at least d outcomes");
    const auto oi = static_cast<Eigen::Index>(outcomes);
    const std::size_t n_params = parameter_count(cfg.search, d, outcomes);

    auto negated = [&](const std::vector<double>& x) {
        return -problem.objective_rank_one(measurement_vectors(x, cfg.search, di, oi));
    };

    NelderMeadOptions nm;
    nm.max_iterations = cfg.max_iterations;
    nm.f_tol = cfg.tolerance;

    const std::size_t batch = cfg.restarts ? cfg.restarts : default_restarts(d);
    const std::size_t budget = std::max(batch, cfg.max_restarts ? cfg.max_restarts : 3 * batch);

    std::vector<double> optima;
    std::vector<double> best_x;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    bool consistent = false;
    while (used < budget) {
        const std::size_t stop = std::min(budget, used + batch);
        for (; used < stop; ++used) {
            std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                              static_cast<std::uint32_t>(cfg.seed >> 32),
                              static_cast<std::uint32_t>(used)};
            Rng rng(seq);
            const auto run = nelder_mead_minimize(negated, random_start(n_params, rng), nm);
            result.evaluations += run.evaluations;
            const double value = -run.value;
            optima.push_back(value);
            if (value > best) {
                best = value;
                best_x = run.x;
            }
        }
        std::vector<double> sorted = optima;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        result.top_gap = sorted.size() > 1 ? sorted[0] - sorted[1] : 0.0;
        consistent = sorted.size() > 1 && result.top_gap <= cfg.consistency_tol;
        if (consistent) break;
    }

    const auto [lo, hi] = std::minmax_element(optima.begin(), optima.end());
    result.spread = *hi - *lo;
    result.restarts_used = used;
    result.consistent = consistent;
    const ComplexMatrix vectors = measurement_vectors(best_x, cfg.search, di, oi);
    result.argmax = povm_from_vectors(vectors);
    result.value = problem.objective_rank_one(vectors);
    return result;
}

OptimizationResult quantum_discord(const DensityMatrix& rho, const Partition& part,
                                   const std::string& unmeasured, const std::string& measured,
                                   const OptimizerConfig& cfg) {
    auto result = classical_correlation(rho, part, unmeasured, measured, cfg);
    result.value = mutual_information(rho, part, unmeasured, measured) - result.value;
    return result;
}

double grid_oracle_qubit(const DensityMatrix& rho, const Partition& part,
                         const std::string& unmeasured, const std::string& measured,
                         std::size_t n_theta, std::size_t n_phi) {
    const auto rho_ab = marginal(rho, part, {unmeasured, measured});
    if (rho_ab.dims()[1] != 2)
        throw DimensionError("grid_oracle_qubit: measured party must be a qubit");
    if (n_theta < 2 || n_phi < 1) throw std::invalid_argument("grid_oracle_qubit: grid too small");
    const Problem problem(rho_ab);
    double best = -std::numeric_limits<double>::infinity();
    ComplexMatrix basis(2, 2);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
        const double c = std::cos(theta / 2.0);
        const double s = std::sin(theta / 2.0);
        for (std::size_t j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
            const Complex e = std::polar(1.0, phi);
            basis(0, 0) = c;
            basis(1, 0) = e * s;
            basis(0, 1) = -std::conj(e) * s;
            basis(1, 1) = c;
            best = std::max(best, problem.objective_rank_one(basis));
        }
    }
    return best;
}

}  // namespace qcorr
