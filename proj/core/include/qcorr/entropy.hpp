#pragma once

#include <string>

#include "qcorr/states.hpp"

namespace qcorr {

/// −Σ λ log₂ λ over eigenvalues above kEigClamp.
double entropy_of_spectrum(const RealVector& eigenvalues);

/// Binary entropy h(p) in bits, with the same clamp policy.
double binary_entropy(double p);

/// S(ρ) in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// S of a raw PSD operator (need not be normalized; used on unnormalized blocks).
double von_neumann_entropy(const ComplexMatrix& op);

/// S of one party's reduced state.
double entropy_of(const DensityMatrix& rho, const Partition& part, const std::string& label);

struct EntropyReport {
    double s_a = 0.0;
    double s_b = 0.0;
    double s_ab = 0.0;
    double mutual_information = 0.0;  ///< s_a + s_b − s_ab
    double araki_lieb_gap = 0.0;      ///< s_ab − |s_a − s_b|
};

/// Entropies of parties `a`, `b` and their union (other parties traced out).
EntropyReport entropy_report(const DensityMatrix& rho, const Partition& part,
                             const std::string& a, const std::string& b);
/// Bipartite form: the partition must have exactly two parties.
EntropyReport entropy_report(const DensityMatrix& rho, const Partition& part);

double mutual_information(const DensityMatrix& rho, const Partition& part,
                          const std::string& a, const std::string& b);
double mutual_information(const DensityMatrix& rho, const Partition& part);

/// S(AB) − |S(A) − S(B)|; zero marks the Araki-Lieb equality regime.
double araki_lieb_gap(const DensityMatrix& rho, const Partition& part);

}  // namespace qcorr
