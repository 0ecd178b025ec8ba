#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

/// Outcomes below this probability contribute nothing to the conditional-entropy sum.
inline constexpr double kProbClamp = 1e-10;
/// Largest measured factor the optimizers accept.
inline constexpr std::size_t kMaxMeasuredDim = 4;

/// Positive operators on the measured factor summing to the identity.
class Povm {
public:
    explicit Povm(std::vector<ComplexMatrix> elements);

    /// Projectors onto the columns of a unitary.
    static Povm projective(const ComplexMatrix& unitary);
    static Povm computational_basis(std::size_t d);
    /// Rank-one POVM {V†|k⟩⟨k|V} from an isometry V (n × d, V†V = I).
    static Povm from_isometry(const ComplexMatrix& isometry);

    const std::vector<ComplexMatrix>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(elements_.front().rows()); }

private:
    std::vector<ComplexMatrix> elements_;
};

struct MeasurementRecord {
    std::vector<double> probs;
    /// Conditional states ρ_i of the unmeasured party; empty where p_i ≤ kProbClamp.
    std::vector<std::optional<DensityMatrix>> cond_states;
    std::vector<double> cond_entropies;
};

enum class MeasurementSearch {
    projective,     ///< rank-1 projective, unitary parametrized by d² reals
    rank_one_povm,  ///< rank-1 POVMs from a parametrized isometry (Naimark)
};

struct OptimizerConfig {
    /// Random starts per batch; 0 selects 20 for a qubit and 60 otherwise.
    std::size_t restarts = 0;
    /// Upper bound on total starts while the top two optima disagree; 0 means 3 × restarts.
    std::size_t max_restarts = 0;
    std::size_t max_iterations = 2000;
    /// Simplex convergence threshold on function values (bits).
    double tolerance = 1e-12;
    /// Top two local optima must agree to within this many bits.
    double consistency_tol = 1e-4;
    std::uint64_t seed = 1;
    MeasurementSearch search = MeasurementSearch::projective;
    /// Outcome count for rank_one_povm; 0 means d².
    std::size_t povm_outcomes = 0;
};

struct OptimizationResult {
    double value = 0.0;
    Povm argmax = Povm::computational_basis(1);
    std::size_t restarts_used = 0;
    /// max − min over the restarts' local optima.
    double spread = 0.0;
    /// |best − second best| local optimum.
    double top_gap = 0.0;
    /// Top two optima agreed within consistency_tol.
    bool consistent = true;
    std::size_t evaluations = 0;
};

/// Measures `measured` with `povm`; `unmeasured` is the party whose conditional
/// states are recorded. Other parties are traced out.
MeasurementRecord apply_povm(const DensityMatrix& rho, const Partition& part,
                             const std::string& unmeasured, const std::string& measured,
                             const Povm& povm);
/// Bipartite form: the partition's other party is the unmeasured one.
MeasurementRecord apply_povm(const DensityMatrix& rho, const Partition& part,
                             const std::string& measured, const Povm& povm);

/// S(A) − Σ p_i S(ρ_i^A) for A = `unmeasured`.
double holevo_objective(const DensityMatrix& rho, const Partition& part,
                        const std::string& unmeasured, const std::string& measured,
                        const Povm& povm);

/// J(unmeasured | measured): Holevo objective maximized over measurements.
/// Throws UnsupportedError when the measured party's dimension exceeds kMaxMeasuredDim.
OptimizationResult classical_correlation(const DensityMatrix& rho, const Partition& part,
                                         const std::string& unmeasured,
                                         const std::string& measured,
                                         const OptimizerConfig& cfg = {});

/// D(unmeasured | measured) = I − J from a single J optimization. `argmax`, spread and
/// restart diagnostics are those of the J search.
OptimizationResult quantum_discord(const DensityMatrix& rho, const Partition& part,
                                   const std::string& unmeasured, const std::string& measured,
                                   const OptimizerConfig& cfg = {});

/// Exhaustive J over the Bloch grid θ ∈ [0, π] (n_theta points) × φ ∈ [0, 2π)
/// (n_phi points) of projective qubit measurements.
double grid_oracle_qubit(const DensityMatrix& rho, const Partition& part,
                         const std::string& unmeasured, const std::string& measured,
                         std::size_t n_theta = 200, std::size_t n_phi = 100);

/// Default restart count for a measured factor of dimension `d`.
std::size_t default_restarts(std::size_t d);

}  // namespace qcorr
