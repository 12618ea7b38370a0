#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torslat/errors.hpp"
#include "torslat/quiver.hpp"

namespace torslat {

using nlohmann::json;

namespace {

uint32_t reduce_entry(const json& v, uint32_t p, const std::string& ctx) {
    if (!v.is_number_integer())
        throw InputError(ctx + ": matrix entries must be integers");
    long long x = v.get<long long>() % (long long)p;
    if (x < 0) x += p;
    return (uint32_t)x;
}

}  // namespace

Algebra load_algebra(const std::string& json_text, Caps caps,
                     std::optional<uint32_t> prime_override) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InputError(std::string("algebra document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("algebra document must be a JSON object");

    if (doc.contains("prime")) {
        if (!doc["prime"].is_number_unsigned() && !doc["prime"].is_number_integer())
            throw InputError("'prime' must be a positive integer");
        caps.prime = doc["prime"].get<uint32_t>();
    }
    if (prime_override) caps.prime = *prime_override;
    if (!is_prime_number(caps.prime))
        throw InputError("ground prime " + std::to_string(caps.prime) + " is not prime");

    if (doc.contains("preset")) {
        for (const char* k : {"vertices", "arrows", "relations", "indecomposables"})
            if (doc.contains(k))
                throw InputError(std::string("'preset' generates the quiver; remove '") + k + "'");
        const json& ps = doc["preset"];
        if (!ps.is_object() || ps.value("type", "") != "A")
            throw InputError("only preset type \"A\" is supported");
        if (!ps.contains("n") || !ps["n"].is_number_integer())
            throw InputError("preset needs an integer 'n'");
        int n = ps["n"].get<int>();
        std::vector<int> ori;
        if (ps.contains("orientation")) {
            for (const json& o : ps["orientation"]) {
                if (o.is_string())
                    ori.push_back(o.get<std::string>() == "<" ? -1 : +1);
                else if (o.is_number_integer())
                    ori.push_back(o.get<int>() < 0 ? -1 : +1);
                else
                    throw InputError("orientation entries must be \">\"/\"<\" or +-1");
            }
        }
        return make_type_a(n, ori, caps);
    }

    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw InputError("missing 'vertices' array");
    std::vector<std::string> vertices;
    for (const json& v : doc["vertices"]) {
        if (!v.is_string()) throw InputError("vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j])
                throw InputError("duplicate vertex name '" + vertices[i] + "'");
    auto vidx = [&](const std::string& name) {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == name) return (int)i;
        throw InputError("unknown vertex '" + name + "'");
    };

    std::vector<Arrow> arrows;
    if (doc.contains("arrows"))
        for (const json& a : doc["arrows"]) {
            if (!a.is_object() || !a.contains("name") || !a.contains("from") || !a.contains("to"))
                throw InputError("each arrow needs 'name', 'from', 'to'");
            Arrow ar;
            ar.name = a["name"].get<std::string>();
            ar.from = vidx(a["from"].get<std::string>());
            ar.to = vidx(a["to"].get<std::string>());
            arrows.push_back(ar);
        }
    auto aidx = [&](const std::string& name) {
        for (size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return (int)i;
        throw InputError("unknown arrow '" + name + "'");
    };
    for (size_t i = 0; i < arrows.size(); ++i)
        for (size_t j = i + 1; j < arrows.size(); ++j)
            if (arrows[i].name == arrows[j].name)
                throw InputError("duplicate arrow name '" + arrows[i].name + "'");

    std::vector<Relation> relations;
    if (doc.contains("relations"))
        for (const json& r : doc["relations"]) {
            if (!r.is_array()) throw InputError("each relation is an array of {coeff, path} terms");
            Relation rel;
            for (const json& t : r) {
                RelTerm term;
                if (!t.is_object() || !t.contains("path"))
                    throw InputError("relation terms need a 'path'");
                if (t.contains("coeff"))
                    term.coeff = reduce_entry(t["coeff"], caps.prime, "relation coeff");
                for (const json& an : t["path"]) term.arrows.push_back(aidx(an.get<std::string>()));
                rel.push_back(std::move(term));
            }
            relations.push_back(std::move(rel));
        }

    if (!doc.contains("indecomposables") || !doc["indecomposables"].is_array())
        throw InputError("missing 'indecomposables' array (or a 'preset')");
    std::vector<Rep> ground;
    int counter = 0;
    for (const json& m : doc["indecomposables"]) {
        Rep rep;
        rep.name = m.value("name", "X" + std::to_string(counter));
        ++counter;
        if (!m.contains("dims") || !m["dims"].is_array() ||
            m["dims"].size() != vertices.size())
            throw InputError("representation '" + rep.name +
                             "': 'dims' must list one dimension per vertex");
        for (const json& d : m["dims"]) rep.dims.push_back(d.get<int>());
        for (const Arrow& a : arrows) {
            int rows = rep.dims[a.to], cols = rep.dims[a.from];
            FpMatrix mat(rows, cols, caps.prime);
            if (m.contains("matrices") && m["matrices"].contains(a.name)) {
                const json& entries = m["matrices"][a.name];
                if ((int)entries.size() != rows * cols)
                    throw InputError("representation '" + rep.name + "', arrow '" + a.name +
                                     "': expected " + std::to_string(rows * cols) + " entries");
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < cols; ++j)
                        mat.set(i, j, reduce_entry(entries[i * cols + j], caps.prime,
                                                   "representation '" + rep.name + "'"));
            } else if (rows * cols != 0) {
                throw InputError("representation '" + rep.name + "': missing matrix for arrow '" +
                                 a.name + "'");
            }
            rep.action.push_back(std::move(mat));
        }
        ground.push_back(std::move(rep));
    }
    return make_algebra(caps, std::move(vertices), std::move(arrows), std::move(relations),
                        std::move(ground));
}

Algebra load_algebra_file(const std::string& path, Caps caps,
                          std::optional<uint32_t> prime_override) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open algebra file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_algebra(ss.str(), caps, prime_override);
}

}  // namespace torslat
