#pragma once

// JSON encodings of graphs, chips, error maps, circuits, match sets and
// mapping results. All failures surface as invalid_input naming the field.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symmap/chip.hpp"
#include "symmap/circuit.hpp"
#include "symmap/errors.hpp"
#include "symmap/graph.hpp"
#include "symmap/matching.hpp"
#include "symmap/scoring.hpp"
#include "symmap/topology.hpp"
#include "symmap/translation.hpp"

namespace symmap::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object()) throw invalid_input(where + ": expected a JSON object");
    const auto it = j.find(name);
    if (it == j.end()) throw invalid_input(where + ": missing field '" + name + "'");
    return *it;
}

// Converts with nlohmann and rethrows type errors with the field path.
template <class T>
T as(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

inline Vertex parse_vertex_key(const std::string& s, const std::string& where) {
    Vertex v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) throw invalid_input(where + ": bad qubit key '" + s + "'");
    return v;
}

inline Edge parse_edge_key(const std::string& s, const std::string& where) {
    const auto dash = s.find('-');
    if (dash == std::string::npos) throw invalid_input(where + ": bad coupler key '" + s + "', expected \"u-v\"");
    const Vertex u = parse_vertex_key(s.substr(0, dash), where);
    const Vertex v = parse_vertex_key(s.substr(dash + 1), where);
    if (u >= v) throw invalid_input(where + ": coupler key '" + s + "' must have u < v");
    return {u, v};
}

}  // namespace detail

inline json parse(const std::string& text, const std::string& where = "input") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(text, path);
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << text << '\n';
}

// ---- graph -----------------------------------------------------------------

inline json to_json(const CouplingGraph& g) {
    json j;
    j["n"] = g.order();
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (g.has_coords()) {
        json coords = json::array();
        for (const Coord& c : *g.coords()) coords.push_back({c.x, c.y});
        j["coords"] = std::move(coords);
    }
    return j;
}

inline CouplingGraph graph_from_json(const json& j, const std::string& where = "graph") {
    const auto n = detail::as<std::size_t>(detail::field(j, "n", where), where + ".n");
    std::vector<Edge> edges;
    const json& je = detail::field(j, "edges", where);
    if (!je.is_array()) throw invalid_input(where + ".edges: expected an array");
    for (std::size_t i = 0; i < je.size(); ++i) {
        const auto pair = detail::as<std::vector<Vertex>>(je[i], where + ".edges[" + std::to_string(i) + "]");
        if (pair.size() != 2) throw invalid_input(where + ".edges[" + std::to_string(i) + "]: expected [u, v]");
        edges.emplace_back(pair[0], pair[1]);
    }
    std::optional<std::vector<Coord>> coords;
    if (const auto it = j.find("coords"); it != j.end()) {
        coords.emplace();
        if (!it->is_array()) throw invalid_input(where + ".coords: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto xy = detail::as<std::vector<std::int64_t>>((*it)[i], where + ".coords[" + std::to_string(i) + "]");
            if (xy.size() != 2) throw invalid_input(where + ".coords[" + std::to_string(i) + "]: expected [x, y]");
            coords->push_back({xy[0], xy[1]});
        }
    }
    try {
        return CouplingGraph(n, std::move(edges), std::move(coords));
    } catch (const invalid_input& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

// ---- symmetry --------------------------------------------------------------

inline json to_json(const Translation& t) { return {{"shift", {t.shift.x, t.shift.y}}}; }

inline Translation translation_from_json(const json& j, const std::string& where = "translation") {
    const auto s = detail::as<std::vector<std::int64_t>>(detail::field(j, "shift", where), where + ".shift");
    if (s.size() != 2) throw invalid_input(where + ".shift: expected [dx, dy]");
    return {{s[0], s[1]}};
}

inline json to_json(const TranslationGroup& g) {
    json gens = json::array();
    for (const Translation& t : g.generators()) gens.push_back(to_json(t));
    return {{"generators", gens}, {"cell", {g.cell().x, g.cell().y}}};
}

inline TranslationGroup group_from_json(const json& j, const std::string& where = "group") {
    const json& jg = detail::field(j, "generators", where);
    if (!jg.is_array()) throw invalid_input(where + ".generators: expected an array");
    std::vector<Translation> gens;
    for (std::size_t i = 0; i < jg.size(); ++i) {
        gens.push_back(translation_from_json(jg[i], where + ".generators[" + std::to_string(i) + "]"));
    }
    Coord cell{1, 1};
    if (const auto it = j.find("cell"); it != j.end()) {
        const auto c = detail::as<std::vector<std::int64_t>>(*it, where + ".cell");
        if (c.size() != 2) throw invalid_input(where + ".cell: expected [cx, cy]");
        cell = {c[0], c[1]};
    }
    try {
        return TranslationGroup(std::move(gens), cell);
    } catch (const invalid_input& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

// ---- chip ------------------------------------------------------------------

/// Chip JSON: the defect-free lattice in graph form plus family, group,
/// generating set and defects, all in lattice ids.
inline json to_json(const Chip& chip) {
    json j = to_json(chip.lattice());
    j["family"] = std::string(to_string(chip.family()));
    j["group"] = to_json(chip.group());
    j["gen_set"] = chip.gen_set().members();
    json dv = json::array();
    for (Vertex v : chip.defects().vertices) dv.push_back(v);
    json de = json::array();
    for (auto [u, v] : chip.defects().edges) de.push_back({std::min(u, v), std::max(u, v)});
    j["defects"] = {{"vertices", dv}, {"edges", de}};
    return j;
}

inline Defects defects_from_json(const json& j, const std::string& where = "defects") {
    Defects d;
    if (!j.is_object()) throw invalid_input(where + ": expected a JSON object");
    if (const auto it = j.find("vertices"); it != j.end()) {
        d.vertices = detail::as<std::vector<Vertex>>(*it, where + ".vertices");
    }
    if (const auto it = j.find("edges"); it != j.end()) {
        if (!it->is_array()) throw invalid_input(where + ".edges: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto pair = detail::as<std::vector<Vertex>>((*it)[i], where + ".edges[" + std::to_string(i) + "]");
            if (pair.size() != 2) throw invalid_input(where + ".edges[" + std::to_string(i) + "]: expected [u, v]");
            d.edges.emplace_back(pair[0], pair[1]);
        }
    }
    return d;
}

inline Chip chip_from_json(const json& j, const std::string& where = "chip") {
    CouplingGraph lattice = graph_from_json(j, where);
    const Family family = [&] {
        try {
            return family_from_string(detail::as<std::string>(detail::field(j, "family", where), where + ".family"));
        } catch (const invalid_input& e) {
            throw invalid_input(where + ".family: " + e.what());
        }
    }();
    TranslationGroup group = group_from_json(detail::field(j, "group", where), where + ".group");
    VertexSet gen(detail::as<std::vector<Vertex>>(detail::field(j, "gen_set", where), where + ".gen_set"));
    Defects defects;
    if (const auto it = j.find("defects"); it != j.end()) defects = defects_from_json(*it, where + ".defects");
    try {
        return Chip(family, std::move(lattice), std::move(group), std::move(gen), std::move(defects));
    } catch (const invalid_input& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

// ---- error map -------------------------------------------------------------

inline json to_json(const ErrorMap& e) {
    json e1 = json::object();
    json em = json::object();
    for (Vertex v = 0; v < e.qubits(); ++v) {
        e1[std::to_string(v)] = e.e1()[v];
        em[std::to_string(v)] = e.em()[v];
    }
    json e2 = json::object();
    for (std::size_t k = 0; k < e.support().size(); ++k) {
        const auto [u, v] = e.support().edges()[k];
        e2[std::to_string(u) + "-" + std::to_string(v)] = e.e2()[k];
    }
    return {{"e1", e1}, {"e2", e2}, {"em", em}};
}

inline ErrorMap error_map_from_json(const json& j, const std::string& where = "errors") {
    const auto per_qubit = [&](const char* name) {
        const json& jm = detail::field(j, name, where);
        if (!jm.is_object()) throw invalid_input(where + "." + name + ": expected an object keyed by qubit");
        std::vector<std::pair<Vertex, double>> items;
        for (const auto& [k, val] : jm.items()) {
            const std::string path = where + "." + name + "[\"" + k + "\"]";
            items.emplace_back(detail::parse_vertex_key(k, path), detail::as<double>(val, path));
        }
        std::sort(items.begin(), items.end());
        std::vector<double> rates;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (items[i].first != i) {
                throw invalid_input(where + "." + name + ": qubit keys must be exactly 0..n-1");
            }
            rates.push_back(items[i].second);
        }
        return rates;
    };
    std::vector<double> e1 = per_qubit("e1");
    std::vector<double> em = per_qubit("em");
    if (e1.size() != em.size()) throw invalid_input(where + ": e1 and em cover different qubits");

    const json& j2 = detail::field(j, "e2", where);
    if (!j2.is_object()) throw invalid_input(where + ".e2: expected an object keyed by \"u-v\"");
    std::vector<std::pair<Edge, double>> items;
    for (const auto& [k, val] : j2.items()) {
        const std::string path = where + ".e2[\"" + k + "\"]";
        items.emplace_back(detail::parse_edge_key(k, path), detail::as<double>(val, path));
    }
    std::sort(items.begin(), items.end());
    std::vector<Edge> edges;
    std::vector<double> e2;
    for (const auto& [edge, rate] : items) {
        edges.push_back(edge);
        e2.push_back(rate);
    }
    const std::size_t n = e1.size();
    try {
        return ErrorMap(CouplingGraph(n, std::move(edges)), std::move(e1), std::move(e2), std::move(em));
    } catch (const invalid_input& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

// ---- circuit ---------------------------------------------------------------

inline json to_json(const Circuit& c) {
    json gates = json::array();
    for (const Gate& g : c.gates()) gates.push_back({{"name", g.name}, {"qubits", g.qubits}});
    return {{"num_qubits", c.num_qubits()}, {"gates", gates}};
}

inline Circuit circuit_from_json(const json& j, const std::string& where = "circuit") {
    const auto n = detail::as<std::size_t>(detail::field(j, "num_qubits", where), where + ".num_qubits");
    const json& jg = detail::field(j, "gates", where);
    if (!jg.is_array()) throw invalid_input(where + ".gates: expected an array");
    std::vector<Gate> gates;
    for (std::size_t i = 0; i < jg.size(); ++i) {
        const std::string path = where + ".gates[" + std::to_string(i) + "]";
        gates.push_back({detail::as<std::string>(detail::field(jg[i], "name", path), path + ".name"),
                         detail::as<std::vector<Vertex>>(detail::field(jg[i], "qubits", path), path + ".qubits")});
    }
    try {
        return Circuit(n, std::move(gates));
    } catch (const invalid_input& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

/// A pattern file is either a graph or a circuit (its interaction graph).
inline PatternGraph pattern_from_json(const json& j, const std::string& where = "pattern") {
    if (j.is_object() && j.contains("gates")) return interaction_graph(circuit_from_json(j, where));
    try {
        return PatternGraph(graph_from_json(j, where));
    } catch (const invalid_input& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw invalid_input(where + ": " + msg);
    }
}

// ---- match sets and results ------------------------------------------------

namespace detail {

// Row as [[label, target], ...] sorted by label.
inline void write_map(std::ostream& out, const MatchSet& ms, std::size_t i, const std::vector<std::size_t>& by_label) {
    const auto row = ms.row(i);
    out << '[';
    for (std::size_t k = 0; k < by_label.size(); ++k) {
        if (k) out << ',';
        out << '[' << ms.domain()[by_label[k]] << ',' << row[by_label[k]] << ']';
    }
    out << ']';
}

inline std::vector<std::size_t> label_order(const MatchSet& ms) {
    std::vector<std::size_t> idx(ms.width());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ms.domain()[a] < ms.domain()[b]; });
    return idx;
}

inline std::string number(double x) { return json(x).dump(); }

}  // namespace detail

/// `[{"map": [[p, t], ...]}, ...]`, streamed.
inline void write_match_set(std::ostream& out, const MatchSet& ms) {
    const auto order = detail::label_order(ms);
    out << '[';
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out << ',';
        out << "{\"map\":";
        detail::write_map(out, ms, i, order);
        out << '}';
    }
    out << ']';
}

inline std::string dump_match_set(const MatchSet& ms) {
    std::ostringstream s;
    write_match_set(s, ms);
    return s.str();
}

inline MatchSet match_set_from_json(const json& j, const std::string& where = "matches") {
    if (!j.is_array()) throw invalid_input(where + ": expected an array of {\"map\": ...}");
    std::vector<Vertex> domain;
    std::vector<std::vector<std::pair<Vertex, Vertex>>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = where + "[" + std::to_string(i) + "]";
        auto pairs = detail::as<std::vector<std::pair<Vertex, Vertex>>>(detail::field(j[i], "map", path), path + ".map");
        std::sort(pairs.begin(), pairs.end());
        std::vector<Vertex> d;
        for (const auto& pr : pairs) d.push_back(pr.first);
        if (std::adjacent_find(d.begin(), d.end()) != d.end()) throw invalid_input(path + ": repeated pattern vertex");
        if (i == 0) {
            domain = d;
        } else if (d != domain) {
            throw invalid_input(path + ": mapping domain differs from the first mapping");
        }
        rows.push_back(std::move(pairs));
    }
    MatchSet ms(domain);
    ms.reserve(rows.size());
    std::vector<Vertex> row(domain.size());
    for (const auto& pairs : rows) {
        for (std::size_t k = 0; k < pairs.size(); ++k) row[k] = pairs[k].second;
        ms.push_back(std::span<const Vertex>(row));
    }
    return ms;
}

/// `[{"map": [...], "score": x}, ...]` in the given order.
inline void write_scored(std::ostream& out, const MatchSet& ms, const ScoreVector& scores,
                         const std::vector<std::size_t>& order) {
    const auto labels = detail::label_order(ms);
    out << '[';
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k) out << ',';
        out << "{\"map\":";
        detail::write_map(out, ms, order[k], labels);
        out << ",\"score\":" << detail::number(scores[order[k]]) << '}';
    }
    out << ']';
}

/// `{"best": {"map", "score"}, "scores": [...]}` sorted by descending score,
/// ties in canonical order.
inline void write_result(std::ostream& out, const MappingResult& r) {
    const auto labels = detail::label_order(r.mappings);
    out << "{\"best\":{\"map\":";
    detail::write_map(out, r.mappings, r.best_index(), labels);
    out << ",\"score\":" << detail::number(r.best_score()) << "},\"scores\":";
    write_scored(out, r.mappings, r.scores, r.ranking);
    out << '}';
}

inline std::string dump_result(const MappingResult& r) {
    std::ostringstream s;
    write_result(s, r);
    return s.str();
}

}  // namespace symmap::io
