#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symmap/errors.hpp"
#include "symmap/graph.hpp"
#include "symmap/translation.hpp"

namespace symmap {

enum class Family { grid, octagonal, heavy_hex, custom };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::grid: return "grid";
        case Family::octagonal: return "octagonal";
        case Family::heavy_hex: return "heavy_hex";
        case Family::custom: return "custom";
    }
    return "custom";
}

inline Family family_from_string(std::string_view s) {
    if (s == "grid") return Family::grid;
    if (s == "octagonal") return Family::octagonal;
    if (s == "heavy_hex" || s == "heavy-hex") return Family::heavy_hex;
    if (s == "custom") return Family::custom;
    throw invalid_input("unknown topology family '" + std::string(s) + "'");
}

/// Disabled qubits and couplers, in lattice (defect-free) vertex ids.
struct Defects {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    [[nodiscard]] bool empty() const noexcept { return vertices.empty() && edges.empty(); }
};

/// A coupling graph embedded in an ideal periodic lattice.
///
/// `lattice()` is the defect-free device as constructed, with coordinates.
/// `graph()` is the live device: defective qubits and couplers removed and
/// the surviving qubits renumbered densely in increasing lattice id, so the
/// two numberings agree when there are no defects. Matches, error maps and
/// scores all refer to live ids.
class Chip {
public:
    Chip(Family family, CouplingGraph lattice, TranslationGroup group, VertexSet gen_set, Defects defects = {})
        : family_(family),
          lattice_(std::move(lattice)),
          group_(std::move(group)),
          gen_set_(std::move(gen_set)),
          defects_(std::move(defects)) {
        if (!lattice_.has_coords()) throw invalid_input("chip lattice needs per-vertex coordinates");
        for (Vertex v : gen_set_) {
            if (!lattice_.contains(v)) throw invalid_input("generating set names unknown vertex " + std::to_string(v));
        }
        build_live_graph();
    }

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] const CouplingGraph& lattice() const noexcept { return lattice_; }
    [[nodiscard]] const CouplingGraph& graph() const noexcept { return graph_; }
    [[nodiscard]] const TranslationGroup& group() const noexcept { return group_; }
    [[nodiscard]] const VertexSet& gen_set() const noexcept { return gen_set_; }
    [[nodiscard]] const Defects& defects() const noexcept { return defects_; }
    [[nodiscard]] std::size_t order() const noexcept { return graph_.order(); }

    [[nodiscard]] Vertex lattice_id(Vertex live) const {
        graph_.check(live);
        return live_to_lattice_[live];
    }

    [[nodiscard]] std::optional<Vertex> live_id(Vertex lattice) const {
        lattice_.check(lattice);
        const Vertex v = lattice_to_live_[lattice];
        if (v == dead) return std::nullopt;
        return v;
    }

    /// Same chip with additional defects (lattice ids).
    [[nodiscard]] Chip with_defects(const Defects& extra) const {
        Defects d = defects_;
        d.vertices.insert(d.vertices.end(), extra.vertices.begin(), extra.vertices.end());
        d.edges.insert(d.edges.end(), extra.edges.begin(), extra.edges.end());
        return Chip(family_, lattice_, group_, gen_set_, std::move(d));
    }

    /// The chip with every defect repaired.
    [[nodiscard]] Chip defect_free() const { return Chip(family_, lattice_, group_, gen_set_); }

private:
    static constexpr Vertex dead = std::numeric_limits<Vertex>::max();

    void build_live_graph() {
        const std::size_t n = lattice_.order();
        std::vector<bool> alive(n, true);
        for (Vertex v : defects_.vertices) {
            lattice_.check(v);
            alive[v] = false;
        }
        std::vector<bool> edge_alive(lattice_.size(), true);
        for (auto [u, v] : defects_.edges) {
            const auto e = lattice_.edge_index(u, v);
            if (!e) {
                throw invalid_input("defect list names missing coupler {" + std::to_string(u) + "," +
                                    std::to_string(v) + "}");
            }
            edge_alive[*e] = false;
        }
        lattice_to_live_.assign(n, dead);
        live_to_lattice_.clear();
        std::vector<Coord> coords;
        for (Vertex v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            lattice_to_live_[v] = static_cast<Vertex>(live_to_lattice_.size());
            live_to_lattice_.push_back(v);
            coords.push_back(lattice_.coord(v));
        }
        std::vector<Edge> edges;
        for (std::size_t e = 0; e < lattice_.size(); ++e) {
            const auto [u, v] = lattice_.edges()[e];
            if (edge_alive[e] && alive[u] && alive[v]) edges.emplace_back(lattice_to_live_[u], lattice_to_live_[v]);
        }
        graph_ = CouplingGraph(live_to_lattice_.size(), std::move(edges), std::move(coords));
    }

    Family family_;
    CouplingGraph lattice_;
    TranslationGroup group_;
    VertexSet gen_set_;
    Defects defects_;
    CouplingGraph graph_;
    std::vector<Vertex> live_to_lattice_;
    std::vector<Vertex> lattice_to_live_;
};

}  // namespace symmap
