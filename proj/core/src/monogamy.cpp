#include "qcorr/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcorr/errors.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

const std::string& label(const Partition& part, std::size_t i) {
    return part.parties().at(i).label;
}

void require_parties(const Partition& part, std::size_t n, const char* what) {
    if (part.size() != n)
        throw PartitionError(std::string(what) + " needs " + std::to_string(n) +
                             " parties, got " + std::to_string(part.size()));
}

// Row-major reshape of a vector on S ⊗ P into a d_S × d_P matrix.
ComplexMatrix as_matrix(const ComplexVector& v, Eigen::Index ds, Eigen::Index dp) {
    ComplexMatrix x(ds, dp);
    for (Eigen::Index s = 0; s < ds; ++s)
        for (Eigen::Index b = 0; b < dp; ++b) x(s, b) = v(s * dp + b);
    return x;
}

}  // namespace

std::string_view to_string(SaturationCase c) {
    switch (c) {
        case SaturationCase::saturates_b: return "saturates_b";
        case SaturationCase::saturates_a_sufficient: return "saturates_a_sufficient";
        case SaturationCase::neither: return "neither";
    }
    return "unknown";
}

std::string_view to_string(DiscordMethod m) {
    switch (m) {
        case DiscordMethod::optimized: return "optimized";
        case DiscordMethod::saturation_bound: return "saturation_bound";
        case DiscordMethod::structure_reduction: return "structure_reduction";
    }
    return "unknown";
}

TradeoffReport tradeoff_pure(const PureState& psi, const Partition& part,
                             const OptimizerConfig& cfg) {
    require_parties(part, 3, "tradeoff_pure");
    const auto rho = psi.density();
    const auto& a = label(part, 0);
    const auto& b = label(part, 1);
    const auto& e = label(part, 2);

    const auto d = quantum_discord(rho, part, a, b, cfg);
    const auto j = classical_correlation(rho, part, e, b, cfg);
    TradeoffReport r;
    r.discord_ab = d.value;
    r.classical_eb = j.value;
    r.s_b = entropy_of(rho, part, b);
    r.residual = r.s_b - r.discord_ab;
    r.defect = r.discord_ab + r.classical_eb - r.s_b;
    r.spread_d = d.spread;
    r.spread_j = j.spread;
    r.consistent = d.consistent && j.consistent;
    return r;
}

double residual_capacity(const DensityMatrix& rho, const Partition& part,
                         const OptimizerConfig& cfg) {
    require_parties(part, 2, "residual_capacity");
    const auto& a = label(part, 0);
    const auto& b = label(part, 1);
    const auto d = discord(rho, part, a, b, cfg);
    return entropy_of(rho, part, b) - d.value;
}

InequalityReport tripartite_inequality(const DensityMatrix& rho, const Partition& part,
                                       const OptimizerConfig& cfg) {
    require_parties(part, 3, "tripartite_inequality");
    const auto& a = label(part, 0);
    const auto& b = label(part, 1);
    const auto& c = label(part, 2);

    const auto d = quantum_discord(rho, part, a, b, cfg);
    const auto j = classical_correlation(rho, part, c, b, cfg);
    InequalityReport r;
    r.discord_ab = d.value;
    r.classical_cb = j.value;
    r.lhs = d.value + j.value;
    r.rhs = entropy_of(rho, part, b);
    r.slack = r.rhs - r.lhs;
    r.spread_d = d.spread;
    r.spread_j = j.spread;
    return r;
}

SaturationVerdict classify_saturation(const DensityMatrix& rho, const Partition& part,
                                      double tol_sat) {
    require_parties(part, 2, "classify_saturation");
    SaturationVerdict v;
    v.entropies = entropy_report(rho, part);
    const auto& s = v.entropies;
    v.gap_b = s.s_a - s.s_b - s.s_ab;
    v.gap_a = s.s_b - s.s_a - s.s_ab;
    v.tolerance_used = tol_sat;
    v.saturates_b = std::abs(v.gap_b) <= tol_sat;
    v.saturates_a_sufficient = std::abs(v.gap_a) <= tol_sat;
    v.verdict = v.saturates_b              ? SaturationCase::saturates_b
                : v.saturates_a_sufficient ? SaturationCase::saturates_a_sufficient
                                           : SaturationCase::neither;
    return v;
}

StructureOutcome extract_structure(const DensityMatrix& rho, const Partition& part,
                                   const std::string& split, double tol) {
    require_parties(part, 2, "extract_structure");
    const std::string partner = label(part, 0) == split ? label(part, 1) : label(part, 0);
    part.at(split);

    const auto rho_sp = marginal(rho, part, {split, partner});
    const auto ds = static_cast<Eigen::Index>(rho_sp.dims()[0]);
    const auto dp = static_cast<Eigen::Index>(rho_sp.dims()[1]);

    // (1) spectral decomposition
    const auto eig = eigh(rho_sp.op());
    const auto r = static_cast<Eigen::Index>(std::max<std::size_t>(1, numerical_rank(eig.values)));
    std::vector<ComplexMatrix> x;  // eigenvectors reshaped to d_S × d_P
    for (Eigen::Index i = 0; i < r; ++i) x.push_back(as_matrix(eig.vectors.col(i), ds, dp));

    // (2) Tr_S(|e_i⟩⟨e_j|) = δ_ij σ for a common σ on the partner
    ComplexMatrix sigma = ComplexMatrix::Zero(dp, dp);
    for (const auto& xi : x) sigma += xi.transpose() * xi.conjugate();
    sigma /= static_cast<double>(r);

    StructureFailure failure;
    double cross = 0.0;
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) {
            ComplexMatrix c = x[i].transpose() * x[j].conjugate();
            if (i == j) c -= sigma;
            const double dev = c.norm();
            if (dev > cross) {
                cross = dev;
                failure.violating_pair = {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
            }
        }
    if (cross > tol) {
        failure.reason = "cross-trace test failed: Tr_" + split + "(|e_i><e_j|) is not delta_ij sigma";
        failure.defect = cross;
        return failure;
    }

    // (3) |φ⟩ = Σ_k √s_k |k⟩_R |b_k⟩ purifies σ
    const auto sig = eigh(sigma);
    Eigen::Index dr = 0;
    while (dr < sig.values.size() && sig.values(dr) > 1e-10) ++dr;
    if (dr == 0) return StructureFailure{"partner marginal vanishes", std::nullopt, 0.0};
    if (r * dr > ds)
        return StructureFailure{"d_L*d_R = " + std::to_string(r * dr) +
                                    " exceeds the split dimension " + std::to_string(ds),
                                std::nullopt, static_cast<double>(r * dr - ds)};

    RealVector weights = sig.values.head(dr);
    weights /= weights.sum();
    ComplexVector phi(dr * dp);
    for (Eigen::Index k = 0; k < dr; ++k)
        for (Eigen::Index b = 0; b < dp; ++b) phi(k * dp + b) = std::sqrt(weights(k)) * sig.vectors(b, k);

    // (4) M_i[:, k] = (I ⊗ ⟨b_k|)|e_i⟩ / √s_k must satisfy M_i† M_j = δ_ij I
    const ComplexMatrix bconj = sig.vectors.leftCols(dr).conjugate();
    std::vector<ComplexMatrix> maps;
    for (const auto& xi : x) {
        ComplexMatrix m = xi * bconj;
        for (Eigen::Index k = 0; k < dr; ++k) m.col(k) /= std::sqrt(sig.values(k));
        maps.push_back(std::move(m));
    }
    double ortho = 0.0;
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) {
            ComplexMatrix g = maps[i].adjoint() * maps[j];
            if (i == j) g -= ComplexMatrix::Identity(dr, dr);
            const double dev = g.norm();
            if (dev > ortho) {
                ortho = dev;
                failure.violating_pair = {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
            }
        }
    if (ortho > tol) {
        failure.reason = "recovered maps are not mutually orthogonal isometries";
        failure.defect = ortho;
        return failure;
    }

    // (5) assemble W, ρ_iso and the reconstruction error
    ComplexMatrix w(ds, r * dr);
    for (Eigen::Index i = 0; i < r; ++i) w.middleCols(i * dr, dr) = maps[i];
    RealVector p = eig.values.head(r).cwiseMax(0.0);
    p /= p.sum();
    ComplexMatrix rho_iso = p.cast<Complex>().asDiagonal();

    const ComplexMatrix core = tensor_product(rho_iso, ComplexMatrix(phi * phi.adjoint()));
    const ComplexMatrix lift = tensor_product(w, ComplexMatrix::Identity(dp, dp));
    const ComplexMatrix rebuilt = lift * core * lift.adjoint();

    StructureWitness witness{
        split,
        partner,
        DensityMatrix(rho_iso, {static_cast<std::size_t>(r)}),
        PureState(phi, {static_cast<std::size_t>(dr), static_cast<std::size_t>(dp)}),
        w,
        trace_distance(rebuilt, rho_sp.op()),
        cross,
        ortho,
        r * dr == ds,
    };
    return witness;
}

StructureOutcome structure_extract(const DensityMatrix& rho, const Partition& part,
                                   double tol_sat, double tol) {
    const auto v = classify_saturation(rho, part, tol_sat);
    switch (v.verdict) {
        case SaturationCase::saturates_b: return extract_structure(rho, part, label(part, 0), tol);
        case SaturationCase::saturates_a_sufficient:
            return extract_structure(rho, part, label(part, 1), tol);
        case SaturationCase::neither: break;
    }
    return StructureFailure{"entropies do not satisfy an Araki-Lieb equality", std::nullopt,
                            std::min(std::abs(v.gap_a), std::abs(v.gap_b))};
}

DiscordEstimate discord(const DensityMatrix& rho, const Partition& part,
                        const std::string& unmeasured, const std::string& measured,
                        const OptimizerConfig& cfg, bool allow_shortcut, double tol_sat) {
    const auto rho_ab = marginal(rho, part, {unmeasured, measured});
    const std::size_t d_measured = rho_ab.dims()[1];
    if (allow_shortcut && d_measured > 2) {
        const auto ab = Partition::per_factor(2);
        const auto v = classify_saturation(rho_ab, ab, tol_sat);
        if (v.saturates_b)
            return {v.entropies.s_b, DiscordMethod::saturation_bound, 0.0, true, 0};
        if (v.saturates_a_sufficient) {
            const auto outcome = extract_structure(rho_ab, ab, "B");
            if (const auto* w = std::get_if<StructureWitness>(&outcome);
                w && w->reconstruction_error <= kStructureTol)
                return {v.entropies.s_a, DiscordMethod::structure_reduction, 0.0, true, 0};
        }
    }
    const auto d = quantum_discord(rho, part, unmeasured, measured, cfg);
    return {d.value, DiscordMethod::optimized, d.spread, d.consistent, d.restarts_used};
}

EqualityChainReport equality_chain_check(const DensityMatrix& rho, const Partition& part,
                                         const OptimizerConfig& cfg, double tol_sat) {
    require_parties(part, 2, "equality_chain_check");
    const auto& a = label(part, 0);
    const auto& b = label(part, 1);
    const auto v = classify_saturation(rho, part, tol_sat);
    if (!v.saturates_a_sufficient)
        throw std::invalid_argument("equality_chain_check: S(B) - S(A) = S(AB) does not hold (gap " +
                                    std::to_string(v.gap_a) + ")");
    const auto outcome = extract_structure(rho, part, b);
    if (const auto* f = std::get_if<StructureFailure>(&outcome))
        throw std::invalid_argument("equality_chain_check: " + f->reason);
    const auto& witness = std::get<StructureWitness>(outcome);

    EqualityChainReport report{{}, 0.0, witness};
    const std::size_t d_a = part.dim_of(a, rho.dims());
    const std::size_t d_b = part.dim_of(b, rho.dims());

    auto add_discord = [&](const std::string& name, const std::string& un, const std::string& me,
                           std::size_t d_me) {
        if (d_me <= kMaxMeasuredDim) {
            const auto d = quantum_discord(rho, part, un, me, cfg);
            report.entries.push_back({name, d.value, "optimized", d.spread});
        } else {
            const auto d = discord(rho, part, un, me, cfg);
            report.entries.push_back({name, d.value, std::string(to_string(d.method)), d.spread});
        }
    };
    add_discord("D(A|B)", a, b, d_b);
    add_discord("D(B|A)", b, a, d_a);

    const Partition phi_parts = Partition::per_factor(2);
    EofResult eof = witness.phi.dims() == DimList{2, 2} ? eof_two_qubit(witness.phi.density())
                                                         : eof_pure(witness.phi, phi_parts);
    report.entries.push_back({"E_F(A:B)", eof.value, std::string(to_string(eof.method)), 0.0});
    report.entries.push_back({"S(A)", v.entropies.s_a, "entropy", 0.0});
    report.entries.push_back(
        {"S(B_L)", entropy_of(witness.phi.density(), phi_parts, "A"), "entropy", 0.0});

    for (const auto& x : report.entries)
        for (const auto& y : report.entries)
            report.max_deviation = std::max(report.max_deviation, std::abs(x.value - y.value));
    return report;
}

DensityMatrix strictness_sample(const StrictnessOptions& options, std::uint64_t seed) {
    Rng rng(seed);
    if (options.near_pure_weight > 0.0) {
        const ComplexMatrix u = random_unitary(4, rng);
        const double w = options.near_pure_weight;
        ComplexMatrix rho = (1.0 - w) * u.col(0) * u.col(0).adjoint() + w * u.col(1) * u.col(1).adjoint();
        return DensityMatrix(std::move(rho), {2, 2});
    }
    return random_density({2, 2}, options.rank, rng);
}

StrictnessReport two_qubit_strictness_scan(const StrictnessOptions& options,
                                           const OptimizerConfig& cfg) {
    const auto ab = Partition::per_factor(2);
    struct Row {
        bool excluded = false;
        StrictnessSample sample;
    };
    const auto rows = parallel_map(options.n_samples, [&](std::size_t i) {
        Row row;
        const std::uint64_t seed = options.seed + i;
        const auto rho = strictness_sample(options, seed);
        if (numerical_rank(eigvalsh(rho.op())) < 2) {
            row.excluded = true;
            return row;
        }
        OptimizerConfig c = cfg;
        c.seed = cfg.seed + i;
        const auto ent = entropy_report(rho, ab);
        const auto d_ab = quantum_discord(rho, ab, "A", "B", c);
        const auto d_ba = quantum_discord(rho, ab, "B", "A", c);
        row.sample = {seed, ent.s_b - d_ab.value, ent.s_a - d_ba.value,
                      std::max(d_ab.spread, d_ba.spread)};
        return row;
    });

    StrictnessReport report;
    report.histogram.assign(5, 0);
    report.min_gap_a = report.min_gap_b = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        if (row.excluded) {
            ++report.excluded_pure;
            continue;
        }
        const auto& s = row.sample;
        ++report.evaluated;
        report.samples.push_back(s);
        report.min_gap_b = std::min(report.min_gap_b, s.gap_b);
        report.min_gap_a = std::min(report.min_gap_a, s.gap_a);
        const double g = std::min(s.gap_a, s.gap_b);
        if (g < options.flag_threshold) report.flagged.push_back(s.seed);
        std::size_t bin = 0;
        for (double edge = 1e-4; bin < 4 && g >= edge; edge *= 10.0) ++bin;
        ++report.histogram[bin];
    }
    return report;
}

DensityMatrix constructed_saturating_state(std::size_t d_l, std::size_t d_r, std::size_t d_b,
                                           std::uint64_t seed) {
    Rng rng(seed);
    const auto rho_l = random_density({d_l}, d_l, rng);
    const auto phi = random_pure({d_r, d_b}, rng);
    const ComplexMatrix product = tensor_product(rho_l.op(), phi.density().op());
    const ComplexMatrix u = random_unitary(d_l * d_r, rng);
    const auto db = static_cast<Eigen::Index>(d_b);
    const ComplexMatrix scramble = tensor_product(u, ComplexMatrix::Identity(db, db));
    ComplexMatrix rho = scramble * product * scramble.adjoint();
    return DensityMatrix(std::move(rho), {d_l * d_r, d_b});
}

}  // namespace qcorr
