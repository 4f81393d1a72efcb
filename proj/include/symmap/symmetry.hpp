#pragma once

// Lattice translations acting on chips: natural extension to vertex sets and
// mappings, orbits, generating-set checks, and the periodic closure used as
// the ideal (boundary-free) lattice.

#include <algorithm>
#include <compare>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "symmap/chip.hpp"
#include "symmap/graph.hpp"
#include "symmap/translation.hpp"

namespace symmap {

/// Injective assignment pattern vertex -> target vertex; image[p] is the
/// target of pattern vertex p.
struct Mapping {
    std::vector<Vertex> image;

    friend auto operator<=>(const Mapping&, const Mapping&) = default;
    friend bool operator==(const Mapping&, const Mapping&) = default;
};

/// (outer ∘ inner)[i] = outer[inner[i]].
inline Mapping compose(const Mapping& outer, const Mapping& inner) {
    Mapping out;
    out.image.reserve(inner.image.size());
    for (Vertex v : inner.image) {
        if (v >= outer.image.size()) {
            throw invalid_input("cannot compose mappings: inner image " + std::to_string(v) +
                                " is outside the outer mapping's domain");
        }
        out.image.push_back(outer.image[v]);
    }
    return out;
}

inline Mapping identity_mapping(std::size_t m) {
    Mapping id;
    id.image.resize(m);
    for (std::size_t i = 0; i < m; ++i) id.image[i] = static_cast<Vertex>(i);
    return id;
}

/// Image of a vertex set under a lattice symmetry, or nullopt when some image
/// coordinate has no live qubit on the chip.
template <LatticeSymmetry S>
std::optional<VertexSet> apply_symmetry(const S& sym, const Chip& chip, const VertexSet& vs) {
    const CouplingGraph& g = chip.graph();
    std::vector<Vertex> out;
    out.reserve(vs.size());
    for (Vertex v : vs) {
        const auto w = g.vertex_at(sym(g.coord(v)));
        if (!w) return std::nullopt;
        out.push_back(*w);
    }
    return VertexSet(std::move(out));
}

/// Post-composes a mapping into the chip with a lattice symmetry. Returns
/// nullopt unless every image vertex is live and every pattern edge still
/// lands on a live coupler.
template <LatticeSymmetry S>
std::optional<Mapping> apply_symmetry(const S& sym, const Chip& chip, const Mapping& m, const CouplingGraph& pattern) {
    const CouplingGraph& g = chip.graph();
    Mapping out;
    out.image.reserve(m.image.size());
    for (Vertex v : m.image) {
        const auto w = g.vertex_at(sym(g.coord(v)));
        if (!w) return std::nullopt;
        out.image.push_back(*w);
    }
    for (const auto& [a, b] : pattern.edges()) {
        if (!g.has_edge(out.image[a], out.image[b])) return std::nullopt;
    }
    return out;
}

inline std::optional<VertexSet> apply_translation(Translation t, const Chip& chip, const VertexSet& vs) {
    return apply_symmetry(t, chip, vs);
}

inline std::optional<Mapping> apply_translation(Translation t, const Chip& chip, const Mapping& m,
                                                const CouplingGraph& pattern) {
    return apply_symmetry(t, chip, m, pattern);
}

/// Vertices of `g` in the orbit of v: those sharing v's fundamental-domain
/// representative.
inline VertexSet orbit(const TranslationGroup& group, const CouplingGraph& g, Vertex v) {
    const Coord rep = group.decompose(g.coord(v)).rep;
    std::vector<Vertex> out;
    for (Vertex u = 0; u < g.order(); ++u) {
        if (group.decompose(g.coord(u)).rep == rep) out.push_back(u);
    }
    return VertexSet(std::move(out));
}

inline VertexSet orbit(const TranslationGroup& group, const Chip& chip, Vertex v) {
    return orbit(group, chip.graph(), v);
}

/// True iff the orbits of `s` cover every vertex of g.
inline bool verify_generating_set(const TranslationGroup& group, const CouplingGraph& g, const VertexSet& s) {
    std::unordered_set<Coord, CoordHash> reps;
    for (Vertex v : s) {
        if (!g.contains(v)) return false;
        reps.insert(group.decompose(g.coord(v)).rep);
    }
    for (Vertex u = 0; u < g.order(); ++u) {
        if (!reps.contains(group.decompose(g.coord(u)).rep)) return false;
    }
    return true;
}

inline bool verify_generating_set(const TranslationGroup& group, const Chip& chip, const VertexSet& s) {
    return verify_generating_set(group, chip.graph(), s);
}

/// Checks {u,v} ∈ E  <=>  {t(u),t(v)} ∈ E for every pair whose endpoints and
/// images all lie in the patch. The patch is taken to fill its bounding box:
/// a site whose image (or preimage) falls inside the box on an empty
/// coordinate also fails the check.
inline bool verify_automorphism_on_lattice(Translation t, const CouplingGraph& patch) {
    if (!patch.has_coords()) throw invalid_input("lattice patch needs coordinates");
    const Box box = bounding_box(*patch.coords());
    const Translation inverse = t.inverse();
    std::vector<std::optional<Vertex>> image(patch.order());
    for (Vertex v = 0; v < patch.order(); ++v) {
        const Coord c = patch.coord(v);
        image[v] = patch.vertex_at(t(c));
        if (!image[v] && box.contains(t(c))) return false;
        if (box.contains(inverse(c)) && !patch.vertex_at(inverse(c))) return false;
    }
    // Forward: every edge with both images present must map to an edge.
    for (const auto& [u, v] : patch.edges()) {
        if (image[u] && image[v] && !patch.has_edge(*image[u], *image[v])) return false;
    }
    // Backward: every edge whose preimages are present must come from an edge.
    for (const auto& [u, v] : patch.edges()) {
        const auto pu = patch.vertex_at(inverse(patch.coord(u)));
        const auto pv = patch.vertex_at(inverse(patch.coord(v)));
        if (pu && pv && !patch.has_edge(*pu, *pv)) return false;
    }
    return true;
}

/// The infinite periodic graph obtained by translating a finite lattice by
/// every group element: a coordinate is a vertex iff its orbit class occurs
/// in the source, and two coordinates are adjacent iff some translate of the
/// pair is a source edge.
///
/// The source is always a subgraph of its closure and the closure is exactly
/// invariant under the group, so it is the ideal lattice the chip embeds in.
class PeriodicLattice {
public:
    PeriodicLattice(const CouplingGraph& source, TranslationGroup group) : group_(std::move(group)) {
        if (!source.has_coords()) throw invalid_input("periodic closure needs coordinates");
        for (Vertex v = 0; v < source.order(); ++v) class_of(group_.decompose(source.coord(v)).rep, true);
        for (const auto& [u, v] : source.edges()) {
            const Coord cu = source.coord(u);
            const Coord cv = source.coord(v);
            steps_[class_of(group_.decompose(cu).rep, false)].push_back(cv - cu);
            steps_[class_of(group_.decompose(cv).rep, false)].push_back(cu - cv);
        }
        for (auto& s : steps_) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
    }

    [[nodiscard]] const TranslationGroup& group() const noexcept { return group_; }
    [[nodiscard]] std::size_t class_count() const noexcept { return steps_.size(); }

    [[nodiscard]] bool contains(Coord p) const { return classes_.contains(group_.decompose(p).rep); }

    [[nodiscard]] const std::vector<Coord>& steps(Coord p) const {
        const auto it = classes_.find(group_.decompose(p).rep);
        if (it == classes_.end()) throw invalid_input("coordinate is not a lattice site");
        return steps_[it->second];
    }

    /// Induced patch on every site within `hops` of a seed site.
    [[nodiscard]] CouplingGraph patch(const std::vector<Coord>& seeds, Distance hops) const {
        std::unordered_map<Coord, Distance, CoordHash> dist;
        std::vector<Coord> order;
        for (const Coord& s : seeds) {
            if (!contains(s)) throw invalid_input("seed is not a lattice site");
            if (dist.emplace(s, 0).second) order.push_back(s);
        }
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Coord p = order[head];
            const Distance d = dist[p];
            if (d >= hops) continue;
            for (const Coord& step : steps(p)) {
                if (dist.emplace(p + step, d + 1).second) order.push_back(p + step);
            }
        }
        std::sort(order.begin(), order.end());
        std::unordered_map<Coord, Vertex, CoordHash> id;
        for (Vertex i = 0; i < order.size(); ++i) id.emplace(order[i], i);
        std::vector<Edge> edges;
        for (Vertex i = 0; i < order.size(); ++i) {
            for (const Coord& step : steps(order[i])) {
                const auto it = id.find(order[i] + step);
                if (it != id.end() && i < it->second) edges.emplace_back(i, it->second);
            }
        }
        const std::size_t n = order.size();
        return CouplingGraph(n, std::move(edges), std::move(order));
    }

private:
    std::size_t class_of(Coord rep, bool create) {
        if (auto it = classes_.find(rep); it != classes_.end()) return it->second;
        if (!create) throw invalid_input("edge endpoint outside the lattice");
        classes_.emplace(rep, steps_.size());
        steps_.emplace_back();
        return steps_.size() - 1;
    }

    TranslationGroup group_;
    std::unordered_map<Coord, std::size_t, CoordHash> classes_;
    std::vector<std::vector<Coord>> steps_;
};

}  // namespace symmap
