#include "report.hpp"

#include <cstdio>

namespace qcorr::cli {

using nlohmann::ordered_json;

namespace {

void render(const ordered_json& node, const std::string& prefix, std::ostream& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items())
            render(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (node.is_array() && !node.empty() &&
               (node.front().is_object() || node.front().is_array())) {
        for (std::size_t i = 0; i < node.size(); ++i)
            render(node[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (node.is_string()) {
        out << prefix << ": " << node.get<std::string>() << '\n';
    } else {
        out << prefix << ": " << node.dump() << '\n';
    }
}

}  // namespace

void render_text(const ordered_json& report, std::ostream& out) {
    render(report, "", out);
}

ordered_json entropy_json(const EntropyReport& e, const std::string& a, const std::string& b) {
    ordered_json j;
    j["S(" + a + ")"] = e.s_a;
    j["S(" + b + ")"] = e.s_b;
    j["S(" + a + b + ")"] = e.s_ab;
    j["I(" + a + ":" + b + ")"] = e.mutual_information;
    j["araki_lieb_gap"] = e.araki_lieb_gap;
    return j;
}

ordered_json verdict_json(const SaturationVerdict& v) {
    ordered_json j;
    j["case"] = std::string(to_string(v.verdict));
    j["saturates_b"] = v.saturates_b;
    j["saturates_a_sufficient"] = v.saturates_a_sufficient;
    j["gap_b"] = v.gap_b;
    j["gap_a"] = v.gap_a;
    j["tolerance"] = v.tolerance_used;
    return j;
}

ordered_json witness_json(const StructureWitness& w) {
    ordered_json j;
    j["split_party"] = w.split_party;
    j["partner_party"] = w.partner_party;
    j["d_isolated"] = w.rho_isolated.dim();
    j["d_entangled"] = w.phi.dims()[0];
    j["full_decomposition"] = w.full_decomposition;
    j["reconstruction_error"] = w.reconstruction_error;
    j["cross_trace_defect"] = w.cross_trace_defect;
    j["orthogonality_defect"] = w.orthogonality_defect;
    j["rho_isolated"] = to_json(make_state_file(w.rho_isolated, std::string("isolated")));
    j["phi"] = to_json(make_state_file(w.phi, std::string("phi")));
    ordered_json amps = ordered_json::array();
    for (Eigen::Index i = 0; i < w.phi.vec().size(); ++i)
        amps.push_back({w.phi.vec()(i).real(), w.phi.vec()(i).imag()});
    j["phi_amplitudes"] = std::move(amps);
    return j;
}

ordered_json failure_json(const StructureFailure& f) {
    ordered_json j;
    j["reason"] = f.reason;
    j["defect"] = f.defect;
    if (f.violating_pair) j["violating_pair"] = {f.violating_pair->first, f.violating_pair->second};
    return j;
}

std::string csv_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

}  // namespace qcorr::cli
