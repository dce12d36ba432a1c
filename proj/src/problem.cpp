#include "sigdist/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sigdist/error.hpp"
#include "sigdist/lattice.hpp"

namespace sigdist {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& why) { throw ProblemError(field + ": " + why); }

std::size_t positive_size(const json& doc, const char* key) {
    if (!doc.contains(key)) fail(key, "missing");
    const json& v = doc[key];
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) fail(key, "must be a positive integer");
    return v.get<std::size_t>();
}

std::vector<std::vector<std::size_t>> point_lists(const json& v, const std::string& field, std::size_t n) {
    if (!v.is_array()) fail(field, "must be an array of point lists");
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = field + "[" + std::to_string(i) + "]";
        if (!v[i].is_array()) fail(at, "must be an array of point indices");
        std::vector<std::size_t>& set = out.emplace_back();
        for (std::size_t j = 0; j < v[i].size(); ++j) {
            const json& p = v[i][j];
            if (!p.is_number_unsigned()) fail(at + "[" + std::to_string(j) + "]", "must be a non-negative integer");
            const auto point = p.get<std::uint64_t>();
            if (point >= n) {
                fail(at + "[" + std::to_string(j) + "]",
                     "point " + std::to_string(point) + " outside ground set of size " + std::to_string(n));
            }
            set.push_back(static_cast<std::size_t>(point));
        }
    }
    return out;
}

SigmaSpec sigma_spec(const json& doc, const char* key, std::size_t n) {
    if (!doc.contains(key)) fail(key, "missing");
    const json& v = doc[key];
    if (!v.is_object()) fail(key, "must be an object with \"partition\" or \"generators\"");
    const bool has_partition = v.contains("partition");
    const bool has_generators = v.contains("generators");
    if (has_partition == has_generators) fail(key, "needs exactly one of \"partition\" or \"generators\"");
    if (v.size() != 1) fail(key, "unexpected extra keys");
    SigmaSpec spec;
    spec.kind = has_partition ? SigmaSpec::Kind::Partition : SigmaSpec::Kind::Generators;
    const std::string field = std::string(key) + (has_partition ? ".partition" : ".generators");
    spec.sets = point_lists(has_partition ? v["partition"] : v["generators"], field, n);
    try {
        realize(spec, n);
    } catch (const Error& e) {
        fail(field, e.what());
    }
    return spec;
}

json to_json(const SigmaSpec& s) {
    json j = json::object();
    j[s.kind == SigmaSpec::Kind::Partition ? "partition" : "generators"] = s.sets;
    return j;
}

} // namespace

SigmaSpec SigmaSpec::from_atoms(const SigmaAlgebra& c) {
    SigmaSpec s;
    for (const SubsetMask& atom : atoms_of(c)) s.sets.push_back(atom.indices());
    return s;
}

ProblemFile parse_problem(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ProblemError(std::string("document: ") + e.what());
    }
    if (!doc.is_object()) fail("document", "must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "x_size" && key != "u_size" && key != "A" && key != "F" && key != "G") fail(key, "unknown field");
    }
    ProblemFile p;
    p.x_size = positive_size(doc, "x_size");
    p.u_size = positive_size(doc, "u_size");
    try {
        require_capacity(p.x_size * p.u_size, "product space");
    } catch (const Error& e) {
        fail("x_size", e.what());
    }
    p.a = sigma_spec(doc, "A", p.x_size);
    p.f = sigma_spec(doc, "F", p.u_size);
    p.g = sigma_spec(doc, "G", p.u_size);
    return p;
}

ProblemFile read_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProblemError("file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string print_problem(const ProblemFile& p) {
    json j = json::object();
    j["x_size"] = p.x_size;
    j["u_size"] = p.u_size;
    j["A"] = to_json(p.a);
    j["F"] = to_json(p.f);
    j["G"] = to_json(p.g);
    return j.dump();
}

SigmaAlgebra realize(const SigmaSpec& spec, std::size_t n) {
    if (spec.kind == SigmaSpec::Kind::Partition) return SigmaAlgebra::from_blocks(n, spec.sets);
    std::vector<SubsetMask> members;
    members.reserve(spec.sets.size());
    for (const auto& s : spec.sets) members.emplace_back(n, s);
    return generate(SetFamily(GroundSet(n), std::move(members)));
}

Problem realize(const ProblemFile& p) {
    return {realize(p.a, p.x_size), realize(p.f, p.u_size), realize(p.g, p.u_size)};
}

} // namespace sigdist
