#pragma once

// Undirected coupling graphs and the BFS distance machinery used by every
// other part of the library.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symmap/errors.hpp"

namespace symmap {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Hop count; `infinite_distance` marks an unreachable pair.
using Distance = std::size_t;
inline constexpr Distance infinite_distance = std::numeric_limits<Distance>::max();

/// Integer lattice coordinate of a physical qubit.
struct Coord {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr Coord operator+(Coord a, Coord b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Coord operator-(Coord a, Coord b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Coord operator-(Coord a) { return {-a.x, -a.y}; }
    friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

struct CoordHash {
    std::size_t operator()(const Coord& c) const noexcept {
        auto h = static_cast<std::uint64_t>(c.x) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(c.y) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Sorted, duplicate-free set of vertex identifiers.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> vs) : members_(vs) { normalize(); }
    explicit VertexSet(std::vector<Vertex> vs) : members_(std::move(vs)) { normalize(); }

    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }
    [[nodiscard]] const std::vector<Vertex>& members() const noexcept { return members_; }

    [[nodiscard]] bool contains(Vertex v) const {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void normalize() {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<Vertex> members_;
};

/// Immutable undirected simple graph on vertices 0..n-1, optionally carrying
/// an injective lattice coordinate per vertex.
///
/// Edges are stored normalized (u < v) and sorted; the adjacency is a CSR
/// table whose per-vertex neighbor lists are sorted, so every traversal is
/// deterministic.
class CouplingGraph {
public:
    CouplingGraph() = default;

    CouplingGraph(std::size_t n, std::vector<Edge> edges, std::optional<std::vector<Coord>> coords = std::nullopt)
        : n_(n), edges_(std::move(edges)), coords_(std::move(coords)) {
        for (auto& [u, v] : edges_) {
            if (u >= n_ || v >= n_) {
                throw invalid_input("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                    "} references a vertex outside 0.." + std::to_string(n_ == 0 ? 0 : n_ - 1));
            }
            if (u == v) throw invalid_input("self-loop on vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges_.begin(), edges_.end());
        if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
            throw invalid_input("duplicate edge {" + std::to_string(dup->first) + "," +
                                std::to_string(dup->second) + "}");
        }
        if (coords_) {
            if (coords_->size() != n_) {
                throw invalid_input("coords has " + std::to_string(coords_->size()) + " entries, expected " +
                                    std::to_string(n_));
            }
            index_.reserve(n_);
            for (Vertex v = 0; v < n_; ++v) {
                if (!index_.emplace((*coords_)[v], v).second) {
                    throw invalid_input("coordinate (" + std::to_string((*coords_)[v].x) + "," +
                                        std::to_string((*coords_)[v].y) + ") assigned to two vertices");
                }
            }
        }
        build_adjacency();
    }

    [[nodiscard]] std::size_t order() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] bool contains(Vertex v) const noexcept { return v < n_; }

    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
        check(v);
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    [[nodiscard]] std::size_t degree(Vertex v) const {
        check(v);
        return offsets_[v + 1] - offsets_[v];
    }

    [[nodiscard]] std::size_t max_degree() const noexcept {
        std::size_t d = 0;
        for (std::size_t v = 0; v < n_; ++v) d = std::max(d, offsets_[v + 1] - offsets_[v]);
        return d;
    }

    /// Position of {u,v} in edges(), or nullopt when the graph has no such edge.
    [[nodiscard]] std::optional<std::size_t> edge_index(Vertex u, Vertex v) const noexcept {
        if (u >= n_ || v >= n_) return std::nullopt;
        for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
            if (adj_[k] == v) return adj_edge_[k];
        }
        return std::nullopt;
    }

    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const noexcept { return edge_index(u, v).has_value(); }

    [[nodiscard]] bool has_coords() const noexcept { return coords_.has_value(); }
    [[nodiscard]] const std::optional<std::vector<Coord>>& coords() const noexcept { return coords_; }

    [[nodiscard]] Coord coord(Vertex v) const {
        check(v);
        if (!coords_) throw invalid_input("vertex " + std::to_string(v) + " has no lattice coordinates");
        return (*coords_)[v];
    }

    [[nodiscard]] std::optional<Vertex> vertex_at(Coord c) const {
        auto it = index_.find(c);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    void check(Vertex v) const {
        if (v >= n_) throw invalid_input("unknown vertex " + std::to_string(v));
    }

    friend bool operator==(const CouplingGraph& a, const CouplingGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.coords_ == b.coords_;
    }

private:
    void build_adjacency() {
        offsets_.assign(n_ + 1, 0);
        for (const auto& [u, v] : edges_) {
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
        adj_.resize(2 * edges_.size());
        adj_edge_.resize(2 * edges_.size());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto [u, v] = edges_[e];
            adj_[fill[u]] = v;
            adj_edge_[fill[u]++] = e;
            adj_[fill[v]] = u;
            adj_edge_[fill[v]++] = e;
        }
        // Edges are sorted by (u, v), so u's higher neighbors arrive in order but
        // lower neighbors are interleaved; sort each slice with its edge ids.
        std::vector<std::pair<Vertex, std::size_t>> tmp;
        for (std::size_t v = 0; v < n_; ++v) {
            tmp.clear();
            for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) tmp.emplace_back(adj_[k], adj_edge_[k]);
            std::sort(tmp.begin(), tmp.end());
            for (std::size_t k = offsets_[v], i = 0; k < offsets_[v + 1]; ++k, ++i) {
                adj_[k] = tmp[i].first;
                adj_edge_[k] = tmp[i].second;
            }
        }
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::optional<std::vector<Coord>> coords_;
    std::unordered_map<Coord, Vertex, CoordHash> index_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
    std::vector<std::size_t> adj_edge_;
};

inline std::size_t degree(const CouplingGraph& g, Vertex v) { return g.degree(v); }

/// Hop counts from every seed to each vertex; infinite_distance where unreachable.
/// Stops expanding past `limit` hops.
inline std::vector<Distance> bfs_distances(const CouplingGraph& g, std::span<const Vertex> seeds,
                                           Distance limit = infinite_distance) {
    std::vector<Distance> dist(g.order(), infinite_distance);
    std::deque<Vertex> queue;
    for (Vertex s : seeds) {
        g.check(s);
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        if (dist[u] >= limit) continue;
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == infinite_distance) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

inline Distance distance(const CouplingGraph& g, Vertex u, Vertex v) {
    g.check(u);
    g.check(v);
    const Vertex seed[] = {u};
    return bfs_distances(g, seed)[v];
}

inline Distance eccentricity(const CouplingGraph& g, Vertex v) {
    const Vertex seed[] = {v};
    const auto dist = bfs_distances(g, seed);
    return *std::max_element(dist.begin(), dist.end());
}

inline bool is_connected(const CouplingGraph& g) {
    if (g.order() == 0) return true;
    const Vertex seed[] = {0};
    const auto dist = bfs_distances(g, seed);
    return std::none_of(dist.begin(), dist.end(), [](Distance d) { return d == infinite_distance; });
}

struct Radius {
    Distance value;
    Vertex center;  // smallest-id vertex attaining the radius
};

inline Radius radius(const CouplingGraph& g) {
    if (g.order() == 0) throw invalid_input("radius of an empty graph is undefined");
    if (!is_connected(g)) throw invalid_input("radius of a disconnected graph is undefined");
    Radius best{infinite_distance, 0};
    for (Vertex v = 0; v < g.order(); ++v) {
        if (const Distance e = eccentricity(g, v); e < best.value) best = {e, v};
    }
    return best;
}

/// N^k(seed): every vertex within k hops of some seed vertex (k = 0 gives the seed).
inline VertexSet neighborhood(const CouplingGraph& g, const VertexSet& seed, Distance k) {
    const auto dist = bfs_distances(g, seed.members(), k);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (dist[v] <= k) out.push_back(v);
    }
    return VertexSet(std::move(out));
}

/// Subgraph induced by `vs`, relabelled 0..|vs|-1 in increasing original id.
/// Coordinates, when present, are carried over.
inline CouplingGraph induced_subgraph(const CouplingGraph& g, const VertexSet& vs) {
    std::vector<Vertex> local(g.order(), std::numeric_limits<Vertex>::max());
    Vertex next = 0;
    for (Vertex v : vs) {
        g.check(v);
        local[v] = next++;
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges()) {
        if (local[u] != std::numeric_limits<Vertex>::max() && local[v] != std::numeric_limits<Vertex>::max()) {
            edges.emplace_back(local[u], local[v]);
        }
    }
    std::optional<std::vector<Coord>> coords;
    if (g.has_coords()) {
        coords.emplace();
        coords->reserve(vs.size());
        for (Vertex v : vs) coords->push_back(g.coord(v));
    }
    return CouplingGraph(vs.size(), std::move(edges), std::move(coords));
}

}  // namespace symmap
