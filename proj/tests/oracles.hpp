#pragma once

// Slow, obviously-correct reference implementations used by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "symmap/symmap.hpp"

namespace oracle {

using namespace symmap;

inline constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;

/// All-pairs distances by Floyd-Warshall on an adjacency matrix.
inline std::vector<std::vector<std::size_t>> all_pairs(const CouplingGraph& g) {
    const std::size_t n = g.order();
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

/// Every injective map of pattern vertices (in id order) onto target vertices
/// that sends pattern edges to target edges. No pruning beyond edge checks
/// against already-placed vertices.
inline std::set<std::vector<Vertex>> brute_force_matches(const CouplingGraph& p, const CouplingGraph& t) {
    std::set<std::vector<Vertex>> out;
    const std::size_t m = p.order();
    std::vector<Vertex> img(m);
    std::vector<bool> used(t.order(), false);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            out.insert(img);
            return;
        }
        for (Vertex v = 0; v < t.order(); ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (auto [a, b] : p.edges()) {
                const std::size_t other = a == i ? b : (b == i ? a : m);
                if (other < i && !t.has_edge(v, img[other])) ok = false;
            }
            if (!ok) continue;
            img[i] = v;
            used[v] = true;
            self(self, i + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return out;
}

inline std::set<std::vector<Vertex>> as_set(const MatchSet& ms) {
    std::set<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < ms.size(); ++i) out.insert({ms.row(i).begin(), ms.row(i).end()});
    return out;
}

/// Orbit by explicit enumeration of group elements k0*g0 + k1*g1 over a
/// generous coefficient range.
inline std::set<Vertex> orbit_by_shifts(const TranslationGroup& group, const CouplingGraph& g, Vertex v,
                                        std::int64_t range = 64) {
    std::set<Vertex> out;
    const Coord c = g.coord(v);
    const std::int64_t r1 = group.rank() >= 2 ? range : 0;
    const std::int64_t r0 = group.rank() >= 1 ? range : 0;
    for (std::int64_t a = -r0; a <= r0; ++a) {
        for (std::int64_t b = -r1; b <= r1; ++b) {
            if (const auto w = g.vertex_at(group.element(a, b)(c))) out.insert(*w);
        }
    }
    return out;
}

/// Score of one mapping straight from the error map's checked accessors.
inline double score(const Circuit& c, const ErrorMap& e, const std::map<Vertex, Vertex>& place) {
    double s = 1.0;
    for (const Gate& g : c.gates()) {
        switch (g.kind()) {
            case GateKind::one_q: s *= 1.0 - e.e1(place.at(g.qubits[0])); break;
            case GateKind::measure: s *= 1.0 - e.em(place.at(g.qubits[0])); break;
            case GateKind::two_q: s *= 1.0 - e.e2(place.at(g.qubits[0]), place.at(g.qubits[1])); break;
        }
    }
    return s;
}

inline std::map<Vertex, Vertex> placement(const MatchSet& ms, std::size_t i) {
    std::map<Vertex, Vertex> out;
    for (std::size_t k = 0; k < ms.width(); ++k) out[ms.domain()[k]] = ms.row(i)[k];
    return out;
}

/// Random connected graph: a random spanning tree plus extra edges.
inline CouplingGraph random_connected(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
    std::set<Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
        const Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
        edges.emplace(u, v);
    }
    for (std::size_t k = 0; k < extra && n > 2; ++k) {
        Vertex a = std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(n - 1))(rng);
        Vertex b = std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(n - 1))(rng);
        if (a == b) continue;
        edges.emplace(std::min(a, b), std::max(a, b));
    }
    return CouplingGraph(n, {edges.begin(), edges.end()});
}

/// Random connected subgraph of a chip's live graph, relabelled 0..m-1, as a
/// pattern guaranteed to embed.
inline CouplingGraph random_subpattern(const CouplingGraph& g, std::size_t m, std::mt19937_64& rng) {
    std::vector<Vertex> picked{std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(g.order() - 1))(rng)};
    // Stops early if the start vertex's component has fewer than m vertices.
    for (std::size_t tries = 0; picked.size() < m && tries < 64 * m; ++tries) {
        const Vertex from = picked[std::uniform_int_distribution<std::size_t>(0, picked.size() - 1)(rng)];
        const auto nb = g.neighbors(from);
        if (nb.empty()) break;
        const Vertex to = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
        if (std::find(picked.begin(), picked.end(), to) != picked.end()) continue;
        picked.push_back(to);
    }
    std::vector<Edge> edges;
    for (Vertex i = 0; i < picked.size(); ++i)
        for (Vertex j = i + 1; j < picked.size(); ++j)
            if (g.has_edge(picked[i], picked[j])) edges.emplace_back(i, j);
    return CouplingGraph(picked.size(), std::move(edges));
}

inline CouplingGraph path(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return CouplingGraph(n, std::move(e));
}

inline CouplingGraph cycle(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    e.emplace_back(0, static_cast<Vertex>(n - 1));
    return CouplingGraph(n, std::move(e));
}

inline CouplingGraph star(std::size_t leaves) {
    std::vector<Edge> e;
    for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return CouplingGraph(leaves + 1, std::move(e));
}

/// Random defects: k dead qubits and j dead couplers, in lattice ids.
inline Defects random_defects(const Chip& chip, std::size_t k, std::size_t j, std::mt19937_64& rng) {
    Defects d;
    const auto& lat = chip.lattice();
    std::set<Vertex> vs;
    while (vs.size() < std::min(k, lat.order() / 2)) {
        vs.insert(std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(lat.order() - 1))(rng));
    }
    d.vertices.assign(vs.begin(), vs.end());
    std::set<std::size_t> es;
    while (es.size() < std::min(j, lat.size() / 2)) {
        es.insert(std::uniform_int_distribution<std::size_t>(0, lat.size() - 1)(rng));
    }
    for (std::size_t e : es) d.edges.push_back(lat.edges()[e]);
    return d;
}

/// Random interior cases of N^m(t(S)) = t(N^m(S)) on an ideal lattice patch.
/// S and t(S) are drawn within `hops / 3` of the generating set so every
/// neighbourhood of radius m <= 3 stays clear of the patch boundary.
class ShiftedNeighbourhoodFixture {
public:
    explicit ShiftedNeighbourhoodFixture(const Chip& chip, Distance hops = 24) : group_(chip.group()), hops_(hops) {
        const PeriodicLattice closure(chip.lattice(), chip.group());
        std::vector<Coord> seeds;
        for (Vertex s : chip.gen_set()) seeds.push_back(chip.lattice().coord(s));
        patch_ = closure.patch(seeds, hops);
        std::vector<Vertex> seed_ids;
        for (const Coord& c : seeds) seed_ids.push_back(*patch_.vertex_at(c));
        interior_ = neighborhood(patch_, VertexSet(seed_ids), hops / 3);
    }

    [[nodiscard]] bool run_case(std::mt19937_64& rng) const {
        const auto& iv = interior_.members();
        for (;;) {
            std::vector<Vertex> s;
            const std::size_t k = 1 + rng() % 3;
            for (std::size_t i = 0; i < k; ++i) s.push_back(iv[rng() % iv.size()]);
            const Translation t = group_.element(static_cast<std::int64_t>(rng() % 5) - 2,
                                                 static_cast<std::int64_t>(rng() % 5) - 2);
            const Distance m = rng() % 4;
            std::vector<Vertex> ts;
            bool inside = true;
            for (Vertex v : s) {
                const auto w = patch_.vertex_at(t(patch_.coord(v)));
                if (!w || !interior_.contains(*w)) inside = false;
                if (w) ts.push_back(*w);
            }
            if (!inside) continue;
            const VertexSet lhs = neighborhood(patch_, VertexSet(ts), m);
            std::vector<Vertex> moved;
            for (Vertex v : neighborhood(patch_, VertexSet(s), m)) {
                const auto w = patch_.vertex_at(t(patch_.coord(v)));
                if (!w) return false;
                moved.push_back(*w);
            }
            return lhs == VertexSet(moved);
        }
    }

private:
    TranslationGroup group_;
    Distance hops_;
    CouplingGraph patch_;
    VertexSet interior_;
};

}  // namespace oracle
