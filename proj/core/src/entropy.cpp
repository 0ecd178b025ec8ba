#include "qcorr/entropy.hpp"

#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void require_bipartite(const Partition& part) {
    if (part.size() != 2)
        throw PartitionError("expected a bipartite partition, got " +
                             std::to_string(part.size()) + " parties");
}

}  // namespace

double entropy_of_spectrum(const RealVector& eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double l = eigenvalues(i);
        if (l > kEigClamp) s -= l * std::log2(l);
    }
    return s;
}

double binary_entropy(double p) {
    double s = 0.0;
    if (p > kEigClamp) s -= p * std::log2(p);
    if (1.0 - p > kEigClamp) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

double von_neumann_entropy(const ComplexMatrix& op) {
    return entropy_of_spectrum(eigvalsh(op));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return von_neumann_entropy(rho.op());
}

double entropy_of(const DensityMatrix& rho, const Partition& part, const std::string& label) {
    return von_neumann_entropy(marginal(rho, part, {label}));
}

EntropyReport entropy_report(const DensityMatrix& rho, const Partition& part,
                             const std::string& a, const std::string& b) {
    const auto rho_ab = marginal(rho, part, {a, b});
    EntropyReport r;
    r.s_ab = von_neumann_entropy(rho_ab);
    r.s_a = von_neumann_entropy(partial_trace(rho_ab.op(), rho_ab.dims(), std::vector<std::size_t>{0}));
    r.s_b = von_neumann_entropy(partial_trace(rho_ab.op(), rho_ab.dims(), std::vector<std::size_t>{1}));
    r.mutual_information = r.s_a + r.s_b - r.s_ab;
    r.araki_lieb_gap = r.s_ab - std::abs(r.s_a - r.s_b);
    return r;
}

EntropyReport entropy_report(const DensityMatrix& rho, const Partition& part) {
    require_bipartite(part);
    return entropy_report(rho, part, part.parties()[0].label, part.parties()[1].label);
}

double mutual_information(const DensityMatrix& rho, const Partition& part,
                          const std::string& a, const std::string& b) {
    return entropy_report(rho, part, a, b).mutual_information;
}

double mutual_information(const DensityMatrix& rho, const Partition& part) {
    return entropy_report(rho, part).mutual_information;
}

double araki_lieb_gap(const DensityMatrix& rho, const Partition& part) {
    return entropy_report(rho, part).araki_lieb_gap;
}

}  // namespace qcorr
