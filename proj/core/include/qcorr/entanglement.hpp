#pragma once

#include <string>

#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class EofMethod { concurrence, koashi_winter, pure_state };

std::string_view to_string(EofMethod method);

struct EofResult {
    double value = 0.0;  ///< bits
    EofMethod method = EofMethod::concurrence;
    /// Exact formula (true) or optimizer-dependent (false).
    bool certified = true;
    /// Optimizer spread for the Koashi-Winter route, 0 otherwise.
    double spread = 0.0;
};

/// Wootters concurrence of a two-qubit state (dims must be [2, 2]).
double concurrence(const DensityMatrix& rho);

/// h((1 + √(1 − C²)) / 2).
double eof_from_concurrence(double c);

/// Exact two-qubit entanglement of formation.
EofResult eof_two_qubit(const DensityMatrix& rho);

/// EoF of a pure bipartite state: entropy of either reduction. Partition must be bipartite.
EofResult eof_pure(const PureState& psi, const Partition& part);

/// E_F(a : rest) for a tripartite pure state, rest = the party other than `a` and
/// `measured`, via E_F = S(a) − J(a | measured).
EofResult eof_via_koashi_winter(const PureState& psi, const Partition& part,
                                const std::string& a, const std::string& measured,
                                const OptimizerConfig& cfg = {});

}  // namespace qcorr
