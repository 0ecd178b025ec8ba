#pragma once

// JSON state files:
//   {"dims":[2,4],"label":"paper-example","matrix":[[[0.25,0.0], ...], ...]}
// Entries are [re, im] pairs in row-major order.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qcorr/states.hpp"

namespace qcorr {

/// Malformed document or schema mismatch.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StateFile {
    DimList dims;
    ComplexMatrix matrix;
    std::optional<std::string> label;
};

nlohmann::json to_json(const StateFile& file);
StateFile state_file_from_json(const nlohmann::json& doc);

StateFile make_state_file(const DensityMatrix& rho, std::optional<std::string> label = {});
StateFile make_state_file(const PureState& psi, std::optional<std::string> label = {});

/// Throws ParseError on unreadable files or schema violations.
StateFile read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const StateFile& file);

std::string dump_state_file(const StateFile& file);

/// Validating conversion; throws InvalidStateError.
DensityMatrix to_density(const StateFile& file);

}  // namespace qcorr
