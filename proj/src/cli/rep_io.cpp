#include "repgeo/cli/rep_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace repgeo::cli {

namespace {

using nlohmann::json;

RepresentationError file_error(const std::string& message) { return RepresentationError("rep_file", message); }

ModMatrix read_matrix(const json& j, std::uint32_t p, std::size_t dim, const std::string& what) {
    if (!j.is_array()) throw file_error(what + " must be an array of rows");
    if (j.size() != dim) throw file_error(what + " must have " + std::to_string(dim) + " rows");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : j) {
        if (!r.is_array() || r.size() != dim) throw file_error(what + " rows must have " + std::to_string(dim) + " entries");
        std::vector<std::int64_t> row;
        for (const auto& e : r) {
            if (!e.is_number_integer()) throw file_error(what + " entries must be integers");
            row.push_back(e.get<std::int64_t>());
        }
        rows.push_back(std::move(row));
    }
    return ModMatrix(p, rows, dim);
}

json matrix_json(const ModMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

FiniteRepresentation parse_representation(const std::string& text, std::size_t bound) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw file_error(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw file_error("top level must be an object");
    for (const char* key : {"p", "group_dim", "action_dim", "generators"})
        if (!j.contains(key)) throw file_error(std::string("missing field '") + key + "'");
    for (const char* key : {"p", "group_dim", "action_dim"})
        if (!j[key].is_number_unsigned()) throw file_error(std::string("field '") + key + "' must be a nonnegative integer");

    const auto p64 = j["p"].get<std::uint64_t>();
    if (p64 > 65521 || !is_prime(static_cast<std::uint32_t>(p64)))
        throw RepresentationError("not_prime", "p = " + std::to_string(p64) + " is not a supported prime");
    const auto p = static_cast<std::uint32_t>(p64);
    const auto group_dim = j["group_dim"].get<std::size_t>();
    const auto action_dim = j["action_dim"].get<std::size_t>();
    if (!j["generators"].is_array()) throw file_error("'generators' must be an array");

    std::vector<GeneratorPair> gens;
    std::size_t i = 0;
    for (const auto& g : j["generators"]) {
        const std::string where = "generator " + std::to_string(i++);
        if (!g.is_object() || !g.contains("group") || !g.contains("action"))
            throw file_error(where + " needs 'group' and 'action'");
        gens.push_back({read_matrix(g["group"], p, group_dim, where + " group matrix"),
                        read_matrix(g["action"], p, action_dim, where + " action matrix")});
    }
    return FiniteRepresentation::generate(p, group_dim, action_dim, std::move(gens), bound);
}

FiniteRepresentation load_representation(const std::string& path, std::size_t bound) {
    std::ifstream in(path);
    if (!in) throw file_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_representation(ss.str(), bound);
}

std::string representation_to_json(const FiniteRepresentation& rep) {
    json gens = json::array();
    for (const auto& g : rep.generators()) gens.push_back({{"group", matrix_json(g.group)}, {"action", matrix_json(g.action)}});
    json j = {{"p", rep.p()}, {"group_dim", rep.group_dim()}, {"action_dim", rep.action_dim()}, {"generators", gens}};
    return j.dump();
}

}  // namespace repgeo::cli
