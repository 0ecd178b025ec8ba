#pragma once

#include <ostream>

#include <nlohmann/json.hpp>

#include "qcorr/monogamy.hpp"
#include "qcorr/state_file.hpp"

namespace qcorr::cli {

/// Human-readable rendering: one `dotted.key: value` line per leaf, in document order.
void render_text(const nlohmann::ordered_json& report, std::ostream& out);

nlohmann::ordered_json entropy_json(const EntropyReport& e, const std::string& a,
                                    const std::string& b);
nlohmann::ordered_json verdict_json(const SaturationVerdict& v);
nlohmann::ordered_json witness_json(const StructureWitness& w);
nlohmann::ordered_json failure_json(const StructureFailure& f);

/// Fixed-format number for CSV rows so repeated runs are byte-identical.
std::string csv_number(double x);

}  // namespace qcorr::cli
