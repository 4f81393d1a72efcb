#pragma once

// Built-in chip families (grid, octagonal, heavy-hex) and the synthetic
// Gaussian calibration model.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symmap/chip.hpp"
#include "symmap/errors.hpp"
#include "symmap/graph.hpp"
#include "symmap/translation.hpp"

namespace symmap {

namespace detail {

inline void require_dims(std::size_t a, std::size_t b, const char* what) {
    if (a == 0 || b == 0) {
        throw invalid_input(std::string(what) + " dimensions must be positive, got " + std::to_string(a) + "x" +
                            std::to_string(b));
    }
}

// Builds a graph from coordinates listed in id order plus coordinate-pair edges.
inline CouplingGraph graph_from_coords(std::vector<Coord> coords, const std::vector<std::pair<Coord, Coord>>& links) {
    std::unordered_map<Coord, Vertex, CoordHash> id;
    for (Vertex v = 0; v < coords.size(); ++v) id.emplace(coords[v], v);
    std::vector<Edge> edges;
    edges.reserve(links.size());
    for (const auto& [a, b] : links) edges.emplace_back(id.at(a), id.at(b));
    const std::size_t n = coords.size();
    return CouplingGraph(n, std::move(edges), std::move(coords));
}

}  // namespace detail

/// w x h square lattice; vertex id = y*w + x.
inline Chip grid(std::size_t w, std::size_t h) {
    detail::require_dims(w, h, "grid");
    std::vector<Coord> coords;
    coords.reserve(w * h);
    std::vector<Edge> edges;
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const auto v = static_cast<Vertex>(y * w + x);
            coords.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
            if (x + 1 < w) edges.emplace_back(v, v + 1);
            if (y + 1 < h) edges.emplace_back(v, static_cast<Vertex>(v + w));
        }
    }
    TranslationGroup group({Translation{{1, 0}}, Translation{{0, 1}}}, {1, 1});
    return Chip(Family::grid, CouplingGraph(w * h, std::move(edges), std::move(coords)), std::move(group),
                VertexSet{0});
}

/// Ring slot of each position in a 4x4 octagonal cell (y grows downward).
/// Positions run 0..7 around the ring; 0/7 sit on the top side, 1/2 on the
/// right, 3/4 on the bottom and 5/6 on the left.
inline constexpr std::array<Coord, 8> octagon_slots{
    Coord{2, 0}, Coord{3, 1}, Coord{3, 2}, Coord{2, 3}, Coord{1, 3}, Coord{0, 2}, Coord{0, 1}, Coord{1, 0}};

/// r x c cells of 8-qubit rings. Cell (a, b) is column a, row b, with ids
/// 8*(b*c + a) + position. Neighbouring rings share two couplers:
/// right neighbour 1-6 and 2-5, lower neighbour 3-0 and 4-7.
inline Chip octagonal(std::size_t r, std::size_t c) {
    detail::require_dims(r, c, "octagonal");
    const auto pos = [&](std::size_t a, std::size_t b, std::size_t p) {
        return static_cast<Vertex>(8 * (b * c + a) + p);
    };
    std::vector<Coord> coords(8 * r * c);
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < r; ++b) {
        for (std::size_t a = 0; a < c; ++a) {
            for (std::size_t p = 0; p < 8; ++p) {
                coords[pos(a, b, p)] = Coord{static_cast<std::int64_t>(4 * a), static_cast<std::int64_t>(4 * b)} +
                                       octagon_slots[p];
                edges.emplace_back(pos(a, b, p), pos(a, b, (p + 1) % 8));
            }
            if (a + 1 < c) {
                edges.emplace_back(pos(a, b, 1), pos(a + 1, b, 6));
                edges.emplace_back(pos(a, b, 2), pos(a + 1, b, 5));
            }
            if (b + 1 < r) {
                edges.emplace_back(pos(a, b, 3), pos(a, b + 1, 0));
                edges.emplace_back(pos(a, b, 4), pos(a, b + 1, 7));
            }
        }
    }
    TranslationGroup group({Translation{{4, 0}}, Translation{{0, 4}}}, {4, 4});
    const std::size_t n = coords.size();
    return Chip(Family::octagonal, CouplingGraph(n, std::move(edges), std::move(coords)),
                std::move(group), VertexSet{0, 1, 2, 3, 4, 5, 6, 7});
}

/// Heavy-hex lattice with r rows of c hexagons.
///
/// Qubit lines run along even y (y = 2i, i = 0..r) over x = 0..4c+2; bridge
/// qubits at odd y join line i to line i+1 at x ≡ 2(i mod 2) (mod 4), so
/// consecutive hexagon rows are offset by half a hexagon. Ids follow (y, x)
/// order. The lattice is invariant under (4,0) and (2,2); one unit cell is
/// the five qubits (0,0), (1,0), (2,0), (3,0), (0,1).
inline Chip heavy_hex(std::size_t r, std::size_t c) {
    detail::require_dims(r, c, "heavy_hex");
    const auto width = static_cast<std::int64_t>(4 * c + 2);
    std::vector<Coord> coords;
    std::vector<std::pair<Coord, Coord>> links;
    for (std::int64_t i = 0; i <= static_cast<std::int64_t>(r); ++i) {
        const std::int64_t y = 2 * i;
        for (std::int64_t x = 0; x <= width; ++x) {
            coords.push_back({x, y});
            if (x > 0) links.push_back({{x - 1, y}, {x, y}});
        }
        if (i == static_cast<std::int64_t>(r)) break;
        for (std::int64_t x = 2 * (i % 2); x <= width; x += 4) {
            coords.push_back({x, y + 1});
            links.push_back({{x, y}, {x, y + 1}});
            links.push_back({{x, y + 1}, {x, y + 2}});
        }
    }
    std::sort(coords.begin(), coords.end(), [](Coord a, Coord b) { return std::pair(a.y, a.x) < std::pair(b.y, b.x); });
    CouplingGraph g = detail::graph_from_coords(std::move(coords), links);
    std::vector<Vertex> cell;
    for (Coord p : {Coord{0, 0}, Coord{1, 0}, Coord{2, 0}, Coord{3, 0}, Coord{0, 1}}) cell.push_back(*g.vertex_at(p));
    TranslationGroup group({Translation{{4, 0}}, Translation{{2, 2}}}, {4, 2});
    return Chip(Family::heavy_hex, std::move(g), std::move(group), VertexSet(std::move(cell)));
}

inline Chip make_chip(Family family, std::size_t r, std::size_t c) {
    switch (family) {
        case Family::grid: return grid(r, c);
        case Family::octagonal: return octagonal(r, c);
        case Family::heavy_hex: return heavy_hex(r, c);
        case Family::custom: break;
    }
    throw invalid_input("custom chips are loaded from JSON, not generated");
}

/// Per-qubit and per-coupler error rates.
///
/// `support()` holds the couplers that carry a two-qubit rate; e2 is aligned
/// index-for-index with support().edges().
class ErrorMap {
public:
    ErrorMap() = default;

    ErrorMap(CouplingGraph support, std::vector<double> e1, std::vector<double> e2, std::vector<double> em)
        : support_(std::move(support)), e1_(std::move(e1)), e2_(std::move(e2)), em_(std::move(em)) {
        if (e1_.size() != support_.order() || em_.size() != support_.order()) {
            throw invalid_input("error map needs one e1 and one em rate per qubit");
        }
        if (e2_.size() != support_.size()) throw invalid_input("error map needs one e2 rate per coupler");
        for (const auto* rates : {&e1_, &e2_, &em_}) {
            for (double x : *rates) {
                if (!(x >= 0.0 && x < 1.0)) throw invalid_input("error rate " + std::to_string(x) + " outside [0,1)");
            }
        }
    }

    [[nodiscard]] const CouplingGraph& support() const noexcept { return support_; }
    [[nodiscard]] std::size_t qubits() const noexcept { return support_.order(); }
    [[nodiscard]] const std::vector<double>& e1() const noexcept { return e1_; }
    [[nodiscard]] const std::vector<double>& e2() const noexcept { return e2_; }
    [[nodiscard]] const std::vector<double>& em() const noexcept { return em_; }

    [[nodiscard]] double e1(Vertex v) const {
        support_.check(v);
        return e1_[v];
    }
    [[nodiscard]] double em(Vertex v) const {
        support_.check(v);
        return em_[v];
    }
    [[nodiscard]] double e2(Vertex u, Vertex v) const {
        const auto e = support_.edge_index(u, v);
        if (!e) {
            throw invalid_input("no two-qubit error rate for coupler {" + std::to_string(u) + "," + std::to_string(v) +
                                "}");
        }
        return e2_[*e];
    }

private:
    CouplingGraph support_;
    std::vector<double> e1_;
    std::vector<double> e2_;
    std::vector<double> em_;
};

struct GaussianParams {
    double e_min = 0.001;
    double e_max = 0.05;
    std::optional<double> sigma;                        // default: coordinate diameter / 4
    std::optional<std::array<double, 2>> center;        // default: coordinate centroid
};

/// Rates grow from e_min at `center` towards e_max with a Gaussian profile:
/// e(p) = e_min + (e_max - e_min) * (1 - exp(-|p - center|^2 / (2 sigma^2))).
/// e1 and em use qubit positions, e2 coupler midpoints.
inline ErrorMap gaussian_error_map(const Chip& chip, const GaussianParams& params = {}) {
    const double lo = params.e_min;
    const double hi = params.e_max;
    if (!(lo >= 0.0 && lo <= hi && hi < 1.0)) {
        throw invalid_input("gaussian error map needs 0 <= e_min <= e_max < 1");
    }
    const CouplingGraph& g = chip.graph();
    if (g.order() == 0) throw invalid_input("chip has no live qubits");
    const auto& coords = *g.coords();

    std::array<double, 2> center{0.0, 0.0};
    if (params.center) {
        center = *params.center;
    } else {
        for (const Coord& c : coords) {
            center[0] += static_cast<double>(c.x);
            center[1] += static_cast<double>(c.y);
        }
        center[0] /= static_cast<double>(coords.size());
        center[1] /= static_cast<double>(coords.size());
    }
    double sigma = 0.0;
    if (params.sigma) {
        sigma = *params.sigma;
    } else {
        const Box box = bounding_box(coords);
        sigma = std::hypot(static_cast<double>(box.max.x - box.min.x), static_cast<double>(box.max.y - box.min.y)) / 4.0;
        if (sigma == 0.0) sigma = 1.0;
    }
    if (!(sigma > 0.0)) throw invalid_input("gaussian error map needs sigma > 0");

    const auto rate = [&](double x, double y) {
        const double dx = x - center[0];
        const double dy = y - center[1];
        return lo + (hi - lo) * (1.0 - std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma)));
    };
    std::vector<double> e1(g.order());
    std::vector<double> em(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        e1[v] = rate(static_cast<double>(coords[v].x), static_cast<double>(coords[v].y));
        em[v] = e1[v];
    }
    std::vector<double> e2;
    e2.reserve(g.size());
    for (const auto& [u, v] : g.edges()) {
        e2.push_back(rate(0.5 * static_cast<double>(coords[u].x + coords[v].x),
                          0.5 * static_cast<double>(coords[u].y + coords[v].y)));
    }
    return ErrorMap(g, std::move(e1), std::move(e2), std::move(em));
}

}  // namespace symmap
