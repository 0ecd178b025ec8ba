#include "qcorr/state_file.hpp"

#include <fstream>
#include <sstream>

namespace qcorr {

using nlohmann::json;

json to_json(const StateFile& file) {
    json matrix = json::array();
    for (Eigen::Index i = 0; i < file.matrix.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < file.matrix.cols(); ++j)
            row.push_back(json::array({file.matrix(i, j).real(), file.matrix(i, j).imag()}));
        matrix.push_back(std::move(row));
    }
    json doc;
    doc["dims"] = file.dims;
    if (file.label) doc["label"] = *file.label;
    doc["matrix"] = std::move(matrix);
    return doc;
}

StateFile state_file_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("state file must be a JSON object");
    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty())
        throw ParseError("state file needs a non-empty \"dims\" array");
    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw ParseError("state file needs a \"matrix\" array");

    StateFile file;
    for (const auto& d : doc["dims"]) {
        if (!d.is_number_integer() || d.get<long long>() < 1)
            throw ParseError("dims entries must be positive integers");
        file.dims.push_back(d.get<std::size_t>());
    }
    const std::size_t n = total_dim(file.dims);
    if (n > max_total_dim())
        throw ParseError("total dimension " + std::to_string(n) + " exceeds the cap " +
                         std::to_string(max_total_dim()));
    const auto& rows = doc["matrix"];
    if (rows.size() != n)
        throw ParseError("matrix has " + std::to_string(rows.size()) + " rows, dims imply " +
                         std::to_string(n));
    file.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != n)
            throw ParseError("matrix row " + std::to_string(i) + " must have " +
                             std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = row[j];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") must be an [re, im] number pair");
            file.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                Complex{e[0].get<double>(), e[1].get<double>()};
        }
    }
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw ParseError("label must be a string");
        file.label = doc["label"].get<std::string>();
    }
    return file;
}

StateFile make_state_file(const DensityMatrix& rho, std::optional<std::string> label) {
    return {rho.dims(), rho.op(), std::move(label)};
}

StateFile make_state_file(const PureState& psi, std::optional<std::string> label) {
    return {psi.dims(), psi.vec() * psi.vec().adjoint(), std::move(label)};
}

StateFile read_state_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return state_file_from_json(doc);
}

std::string dump_state_file(const StateFile& file) {
    return to_json(file).dump();
}

void write_state_file(const std::filesystem::path& path, const StateFile& file) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << dump_state_file(file) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

DensityMatrix to_density(const StateFile& file) {
    return DensityMatrix(file.matrix, file.dims);
}

}  // namespace qcorr
