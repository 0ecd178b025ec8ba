#pragma once

// Monogamy identities between discord and classical correlation, the discord
// upper bound D(A|B) ≤ S(B), and the structure of states that saturate it.
//
// Party roles follow partition order: for bipartite inputs the first party is
// A (unmeasured) and the second is B (measured); tripartite inputs are
// ordered (A, B, E) or (A, B, C).

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcorr/entanglement.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

inline constexpr double kSaturationTol = 1e-7;
inline constexpr double kStructureTol = 1e-6;

struct TradeoffReport {
    double discord_ab = 0.0;    ///< D(A|B)
    double classical_eb = 0.0;  ///< J(E|B)
    double s_b = 0.0;
    double residual = 0.0;      ///< S(B) − D(A|B)
    double defect = 0.0;        ///< D(A|B) + J(E|B) − S(B)
    double spread_d = 0.0;
    double spread_j = 0.0;
    bool consistent = true;
};

/// D(A|B) + J(E|B) against S(B) for a pure state on (A, B, E).
TradeoffReport tradeoff_pure(const PureState& psi, const Partition& part,
                             const OptimizerConfig& cfg = {});

/// S(B) − D(A|B), the ceiling on J(C|B) for any extension C.
double residual_capacity(const DensityMatrix& rho, const Partition& part,
                         const OptimizerConfig& cfg = {});

struct InequalityReport {
    double lhs = 0.0;  ///< D(A|B) + J(C|B)
    double rhs = 0.0;  ///< S(B)
    double slack = 0.0;
    double discord_ab = 0.0;
    double classical_cb = 0.0;
    double spread_d = 0.0;
    double spread_j = 0.0;
};

/// D(A|B) + J(C|B) ≤ S(B) for a (possibly mixed) state on (A, B, C).
InequalityReport tripartite_inequality(const DensityMatrix& rho, const Partition& part,
                                       const OptimizerConfig& cfg = {});

enum class SaturationCase { saturates_b, saturates_a_sufficient, neither };

std::string_view to_string(SaturationCase c);

struct SaturationVerdict {
    SaturationCase verdict = SaturationCase::neither;
    bool saturates_b = false;             ///< S(A) − S(B) = S(AB): D(A|B) = S(B)
    bool saturates_a_sufficient = false;  ///< S(B) − S(A) = S(AB): D(A|B) = S(A)
    double gap_b = 0.0;                   ///< S(A) − S(B) − S(AB)
    double gap_a = 0.0;                   ///< S(B) − S(A) − S(AB)
    double tolerance_used = kSaturationTol;
    EntropyReport entropies;
};

/// Classification from entropies alone; no measurement optimization.
SaturationVerdict classify_saturation(const DensityMatrix& rho, const Partition& part,
                                      double tol_sat = kSaturationTol);

/// Certificate that ρ = (W ⊗ I)(ρ_iso ⊗ |φ⟩⟨φ|)(W ⊗ I)† where W embeds
/// C^{d_L} ⊗ C^{d_R} into the split party and |φ⟩ lives on C^{d_R} ⊗ partner.
struct StructureWitness {
    std::string split_party;
    std::string partner_party;
    DensityMatrix rho_isolated;  ///< dims [d_L], diagonal in its canonical basis
    PureState phi;               ///< dims [d_R, d_partner]
    ComplexMatrix embedding;     ///< d_split × (d_L·d_R) isometry
    double reconstruction_error = 0.0;  ///< trace distance
    double cross_trace_defect = 0.0;
    double orthogonality_defect = 0.0;
    /// d_L·d_R equals the split dimension; otherwise W is a proper isometry.
    bool full_decomposition = true;
};

struct StructureFailure {
    std::string reason;
    std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
    double defect = 0.0;
};

using StructureOutcome = std::variant<StructureWitness, StructureFailure>;

/// Factorizes `split` as L ⊗ R with R purely entangled with the other party.
StructureOutcome extract_structure(const DensityMatrix& rho, const Partition& part,
                                   const std::string& split, double tol = kStructureTol);

/// Picks the split from classify_saturation: A when saturates_b, B when only
/// saturates_a_sufficient; fails when neither.
StructureOutcome structure_extract(const DensityMatrix& rho, const Partition& part,
                                   double tol_sat = kSaturationTol, double tol = kStructureTol);

enum class DiscordMethod { optimized, saturation_bound, structure_reduction };

std::string_view to_string(DiscordMethod m);

struct DiscordEstimate {
    double value = 0.0;
    DiscordMethod method = DiscordMethod::optimized;
    double spread = 0.0;
    bool consistent = true;
    std::size_t restarts_used = 0;
};

/// D(unmeasured | measured), using exact structural reductions for measured
/// dimensions above 2 when the entropies certify them, and direct optimization otherwise.
DiscordEstimate discord(const DensityMatrix& rho, const Partition& part,
                        const std::string& unmeasured, const std::string& measured,
                        const OptimizerConfig& cfg = {}, bool allow_shortcut = true,
                        double tol_sat = kSaturationTol);

struct ChainEntry {
    std::string name;
    double value = 0.0;
    std::string method;
    double spread = 0.0;
};

struct EqualityChainReport {
    std::vector<ChainEntry> entries;  ///< D(A|B), D(B|A), E_F(A:B), S(A), S(B_L)
    double max_deviation = 0.0;
    StructureWitness witness;
};

/// Evaluates D(A|B), D(B|A), E_F(A:B), S(A) and S(B_L) for a state whose B
/// factorizes as |ψ⟩^{A B_L} ⊗ ρ^{B_R}. Throws std::invalid_argument when the
/// entropies do not certify that form or the structure cannot be extracted.
EqualityChainReport equality_chain_check(const DensityMatrix& rho, const Partition& part,
                                         const OptimizerConfig& cfg = {},
                                         double tol_sat = kSaturationTol);

struct StrictnessOptions {
    std::size_t n_samples = 1000;
    std::uint64_t seed = 1;
    /// Rank of the induced-measure samples.
    std::size_t rank = 4;
    /// When positive, samples are (1 − w)|ψ⟩⟨ψ| + w|χ⟩⟨χ| with ⟨ψ|χ⟩ = 0 instead.
    double near_pure_weight = 0.0;
    /// Samples with a gap below this are listed for inspection.
    double flag_threshold = 1e-4;
};

struct StrictnessSample {
    std::uint64_t seed = 0;
    double gap_b = 0.0;  ///< S(B) − D(A|B)
    double gap_a = 0.0;  ///< S(A) − D(B|A)
    double spread = 0.0;
};

struct StrictnessReport {
    std::size_t evaluated = 0;
    std::size_t excluded_pure = 0;
    double min_gap_b = 0.0;
    double min_gap_a = 0.0;
    std::vector<StrictnessSample> samples;
    std::vector<std::uint64_t> flagged;
    /// Counts of min(gap_a, gap_b) per decade: <1e-4, [1e-4,1e-3), ..., ≥1e-1.
    std::vector<std::size_t> histogram;
};

/// Two-qubit scan of both discord-bound gaps over random mixed states.
StrictnessReport two_qubit_strictness_scan(const StrictnessOptions& options,
                                           const OptimizerConfig& cfg = {});

/// Mixed two-qubit sample for the strictness scan with the given per-sample seed.
DensityMatrix strictness_sample(const StrictnessOptions& options, std::uint64_t seed);

/// ρ_iso ⊗ |φ⟩⟨φ| with random factors on C^{d_L} ⊗ (C^{d_R} ⊗ C^{d_B}), scrambled by a
/// Haar unitary on A = C^{d_L·d_R}; dims [d_L·d_R, d_B].
DensityMatrix constructed_saturating_state(std::size_t d_l, std::size_t d_r, std::size_t d_b,
                                           std::uint64_t seed);

}  // namespace qcorr
