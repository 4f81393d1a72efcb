#pragma once

// Subgraph monomorphism search: a VF2-style full-graph matcher (baseline and
// oracle) and the symmetry-reduced matcher that searches only the
// neighbourhood of a generating set and translates what it finds.

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symmap/chip.hpp"
#include "symmap/errors.hpp"
#include "symmap/graph.hpp"
#include "symmap/symmetry.hpp"
#include "symmap/translation.hpp"

namespace symmap {

/// Connected, non-empty pattern. `labels[p]` names pattern vertex p to the
/// outside world (logical qubit ids for circuits; 0..m-1 otherwise).
struct PatternGraph {
    CouplingGraph graph;
    std::vector<Vertex> labels;

    PatternGraph(CouplingGraph g)  // NOLINT(google-explicit-constructor)
        : PatternGraph(std::move(g), {}) {}

    PatternGraph(CouplingGraph g, std::vector<Vertex> l) : graph(std::move(g)), labels(std::move(l)) {
        if (graph.order() == 0) throw invalid_input("pattern graph is empty");
        if (!is_connected(graph)) throw invalid_input("pattern graph is not connected");
        if (labels.empty()) {
            labels.resize(graph.order());
            std::iota(labels.begin(), labels.end(), Vertex{0});
        }
        if (labels.size() != graph.order()) throw invalid_input("pattern labels do not match pattern order");
    }

    [[nodiscard]] std::size_t order() const noexcept { return graph.order(); }
};

/// Set of mappings stored row-major: row i holds the targets of pattern
/// vertices 0..width-1. Canonical order is lexicographic on rows, which is
/// the order of the (pattern vertex, target) pair lists sorted by pattern
/// vertex.
class MatchSet {
public:
    MatchSet() = default;
    explicit MatchSet(std::vector<Vertex> domain) : domain_(std::move(domain)) {}

    [[nodiscard]] std::size_t width() const noexcept { return domain_.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return width() == 0 ? 0 : data_.size() / width(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }
    [[nodiscard]] const std::vector<Vertex>& domain() const noexcept { return domain_; }
    [[nodiscard]] const std::vector<Vertex>& data() const noexcept { return data_; }

    [[nodiscard]] std::span<const Vertex> row(std::size_t i) const { return {data_.data() + i * width(), width()}; }
    [[nodiscard]] Mapping mapping(std::size_t i) const {
        const auto r = row(i);
        return {{r.begin(), r.end()}};
    }

    void push_back(std::span<const Vertex> r) { data_.insert(data_.end(), r.begin(), r.end()); }
    void push_back(const Mapping& m) { push_back(std::span<const Vertex>(m.image)); }
    void reserve(std::size_t rows) { data_.reserve(rows * width()); }

    void append(const MatchSet& other) { data_.insert(data_.end(), other.data_.begin(), other.data_.end()); }

    /// Sort rows into canonical order and drop duplicates.
    void canonicalize() {
        const std::size_t w = width();
        const std::size_t n = size();
        if (n < 2) return;
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0U);
        const Vertex* base = data_.data();
        std::sort(idx.begin(), idx.end(), [base, w](std::uint32_t a, std::uint32_t b) {
            return std::lexicographical_compare(base + a * w, base + a * w + w, base + b * w, base + b * w + w);
        });
        std::vector<Vertex> sorted;
        sorted.reserve(data_.size());
        for (std::size_t k = 0; k < n; ++k) {
            const Vertex* r = base + idx[k] * w;
            if (k > 0 && std::equal(r, r + w, sorted.end() - static_cast<std::ptrdiff_t>(w))) continue;
            sorted.insert(sorted.end(), r, r + w);
        }
        data_ = std::move(sorted);
    }

    [[nodiscard]] MatchSet with_domain(std::vector<Vertex> domain) const {
        if (domain.size() != width()) throw invalid_input("relabelled domain has the wrong width");
        MatchSet out(std::move(domain));
        out.data_ = data_;
        return out;
    }

    friend bool operator==(const MatchSet&, const MatchSet&) = default;

private:
    std::vector<Vertex> domain_;
    std::vector<Vertex> data_;
};

namespace detail {

inline constexpr Vertex unmapped = std::numeric_limits<Vertex>::max();

/// Pattern visiting order: start at the highest-degree vertex, then always
/// take the unvisited vertex with the most visited neighbours (ties: higher
/// degree, then lower id). Each vertex after the first touches an earlier one.
inline std::vector<Vertex> matching_order(const CouplingGraph& p) {
    const std::size_t m = p.order();
    std::vector<Vertex> order;
    std::vector<int> links(m, 0);
    std::vector<bool> used(m, false);
    order.reserve(m);
    for (std::size_t step = 0; step < m; ++step) {
        Vertex best = unmapped;
        for (Vertex v = 0; v < m; ++v) {
            if (used[v] || (step > 0 && links[v] == 0)) continue;
            if (best == unmapped || links[v] > links[best] ||
                (links[v] == links[best] && p.degree(v) > p.degree(best))) {
                best = v;
            }
        }
        used[best] = true;
        order.push_back(best);
        for (Vertex w : p.neighbors(best)) ++links[w];
    }
    return order;
}

/// VF2 state-space search for monomorphisms pattern -> target.
///
/// Follows the reference VF2 state: core and terminal-set arrays sized to
/// each graph, with candidate target vertices found by sweeping the target's
/// terminal array at every state. That sweep costs O(n) per state, which is
/// where VF2's quadratic best case in the target order comes from.
class Vf2 {
public:
    Vf2(const CouplingGraph& pattern, const CouplingGraph& target)
        : p_(pattern),
          t_(target),
          order_(matching_order(pattern)),
          core1_(pattern.order(), unmapped),
          core2_(target.order(), unmapped),
          term1_(pattern.order(), 0),
          term2_(target.order(), 0) {}

    template <class Emit>
    void run(Emit&& emit) {
        if (p_.order() == 0 || p_.order() > t_.order()) return;
        match(0, emit);
    }

private:
    template <class Emit>
    void match(std::size_t depth, Emit& emit) {
        if (depth == p_.order()) {
            emit(std::span<const Vertex>(core1_));
            return;
        }
        const Vertex u = order_[depth];
        const std::size_t n = t_.order();
        for (Vertex v = 0; v < n; ++v) {
            if (core2_[v] != unmapped) continue;
            if (depth > 0 && term2_[v] == 0) continue;
            if (!feasible(u, v)) continue;
            push(u, v, depth + 1);
            match(depth + 1, emit);
            pop(u, v, depth + 1);
        }
    }

    bool feasible(Vertex u, Vertex v) const {
        if (t_.degree(v) < p_.degree(u)) return false;
        std::size_t term_p = 0;
        std::size_t new_p = 0;
        for (Vertex w : p_.neighbors(u)) {
            if (core1_[w] != unmapped) {
                if (!t_.has_edge(v, core1_[w])) return false;
            } else if (term1_[w] != 0) {
                ++term_p;
            } else {
                ++new_p;
            }
        }
        std::size_t term_t = 0;
        std::size_t new_t = 0;
        for (Vertex x : t_.neighbors(v)) {
            if (core2_[x] != unmapped) continue;
            if (term2_[x] != 0) {
                ++term_t;
            } else {
                ++new_t;
            }
        }
        return term_p <= term_t && term_p + new_p <= term_t + new_t;
    }

    void push(Vertex u, Vertex v, std::size_t depth) {
        core1_[u] = v;
        core2_[v] = u;
        if (term1_[u] == 0) term1_[u] = depth;
        if (term2_[v] == 0) term2_[v] = depth;
        for (Vertex w : p_.neighbors(u)) {
            if (term1_[w] == 0) term1_[w] = depth;
        }
        for (Vertex x : t_.neighbors(v)) {
            if (term2_[x] == 0) term2_[x] = depth;
        }
    }

    void pop(Vertex u, Vertex v, std::size_t depth) {
        for (Vertex w : p_.neighbors(u)) {
            if (term1_[w] == depth) term1_[w] = 0;
        }
        for (Vertex x : t_.neighbors(v)) {
            if (term2_[x] == depth) term2_[x] = 0;
        }
        if (term1_[u] == depth) term1_[u] = 0;
        if (term2_[v] == depth) term2_[v] = 0;
        core1_[u] = unmapped;
        core2_[v] = unmapped;
    }

    const CouplingGraph& p_;
    const CouplingGraph& t_;
    std::vector<Vertex> order_;
    std::vector<Vertex> core1_;
    std::vector<Vertex> core2_;
    std::vector<std::size_t> term1_;
    std::vector<std::size_t> term2_;
};

}  // namespace detail

/// Every subgraph monomorphism of the pattern into `target` (pattern edges
/// land on target edges; extra target edges are allowed), in canonical order.
inline MatchSet vf2_match(const PatternGraph& pattern, const CouplingGraph& target) {
    MatchSet out(pattern.labels);
    detail::Vf2(pattern.graph, target).run([&](std::span<const Vertex> m) { out.push_back(m); });
    out.canonicalize();
    return out;
}

struct SbsmOptions {
    unsigned threads = 1;
};

struct SbsmResult {
    MatchSet matches;
    std::size_t region_order = 0;    // |R|
    std::size_t region_matches = 0;  // |H0|
    std::size_t anchored = 0;        // H0 members whose centre sits on the generating set
};

namespace detail {

inline void check_chip(const Chip& chip) {
    if (!verify_generating_set(chip.group(), chip.lattice(), chip.gen_set())) {
        throw config_error("generating set does not cover the chip under its translation group");
    }
}

inline CouplingGraph region_for(const CouplingGraph& pattern, const Chip& chip, Distance r) {
    const PeriodicLattice closure(chip.lattice(), chip.group());
    std::vector<Coord> seeds;
    for (Vertex s : chip.gen_set()) seeds.push_back(chip.lattice().coord(s));
    CouplingGraph region = closure.patch(seeds, r);
    if (pattern.order() > region.order()) {
        throw invalid_input("pattern has " + std::to_string(pattern.order()) +
                            " vertices but the reduced region only " + std::to_string(region.order()));
    }
    return region;
}

// Dense coordinate -> live vertex table over the chip's bounding box.
class CoordTable {
public:
    explicit CoordTable(const CouplingGraph& g) {
        if (g.order() == 0) return;
        box_ = bounding_box(*g.coords());
        width_ = static_cast<std::size_t>(box_.max.x - box_.min.x + 1);
        const auto height = static_cast<std::size_t>(box_.max.y - box_.min.y + 1);
        cells_.assign(width_ * height, unmapped);
        for (Vertex v = 0; v < g.order(); ++v) cells_[slot(g.coord(v))] = v;
    }

    [[nodiscard]] const Box& box() const noexcept { return box_; }
    [[nodiscard]] bool empty() const noexcept { return cells_.empty(); }

    // Caller guarantees c lies inside box().
    [[nodiscard]] Vertex at(Coord c) const { return cells_[slot(c)]; }

private:
    [[nodiscard]] std::size_t slot(Coord c) const {
        return static_cast<std::size_t>(c.y - box_.min.y) * width_ + static_cast<std::size_t>(c.x - box_.min.x);
    }

    Box box_{};
    std::size_t width_ = 0;
    std::vector<Vertex> cells_;
};

}  // namespace detail

/// Induced subgraph of N^r(gen_set) in the chip's ideal periodic lattice,
/// r = radius of the pattern. Vertices carry lattice coordinates.
inline CouplingGraph reduced_region(const PatternGraph& pattern, const Chip& chip) {
    detail::check_chip(chip);
    return detail::region_for(pattern.graph, chip, radius(pattern.graph).value);
}

/// Symmetry-based subgraph matching. Finds every match inside the reduced
/// region, keeps those whose pattern centre lands on the canonical
/// generating-set site of its orbit, and translates each of them across the
/// chip. Each chip match arises from exactly one (region match, translation)
/// pair, so the result equals vf2_match(pattern, chip.graph()).
inline SbsmResult sbsm_search(const PatternGraph& pattern, const Chip& chip, const SbsmOptions& options = {}) {
    detail::check_chip(chip);
    const CouplingGraph& p = pattern.graph;
    const Radius rad = radius(p);
    const CouplingGraph region = detail::region_for(p, chip, rad.value);

    SbsmResult result;
    result.region_order = region.order();
    result.matches = MatchSet(pattern.labels);

    // Canonical generating-set site per orbit: the smallest-id member.
    const TranslationGroup& group = chip.group();
    std::unordered_map<Coord, Coord, CoordHash> canonical;
    for (Vertex s : chip.gen_set()) {
        const Coord c = chip.lattice().coord(s);
        canonical.emplace(group.decompose(c).rep, c);
    }

    const std::size_t m = p.order();
    std::vector<Coord> anchored;  // m coordinates per kept region match
    detail::Vf2(p, region).run([&](std::span<const Vertex> img) {
        ++result.region_matches;
        const Coord a = region.coord(img[rad.center]);
        if (canonical.at(group.decompose(a).rep) != a) return;
        for (Vertex v : img) anchored.push_back(region.coord(v));
    });
    result.anchored = anchored.size() / m;

    const CouplingGraph& live = chip.graph();
    const detail::CoordTable table(live);
    if (table.empty() || result.anchored == 0) return result;

    const auto translate_range = [&](std::size_t first, std::size_t last, MatchSet& out) {
        std::vector<Vertex> row(m);
        for (std::size_t k = first; k < last; ++k) {
            const std::span<const Coord> coords(anchored.data() + k * m, m);
            const Box box = bounding_box(coords);
            for (const Translation& t : group.elements_within(box, table.box())) {
                bool ok = true;
                for (std::size_t i = 0; i < m && ok; ++i) {
                    row[i] = table.at(t(coords[i]));
                    ok = row[i] != detail::unmapped;
                }
                if (!ok) continue;
                for (const auto& [a, b] : p.edges()) {
                    if (!live.has_edge(row[a], row[b])) {
                        ok = false;
                        break;
                    }
                }
                if (ok) out.push_back(std::span<const Vertex>(row));
            }
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, result.anchored));
    if (jobs == 1) {
        translate_range(0, result.anchored, result.matches);
    } else {
        std::vector<MatchSet> parts(jobs, MatchSet(pattern.labels));
        std::vector<std::thread> workers;
        const std::size_t chunk = (result.anchored + jobs - 1) / jobs;
        for (std::size_t j = 0; j < jobs; ++j) {
            const std::size_t first = std::min(result.anchored, j * chunk);
            const std::size_t last = std::min(result.anchored, first + chunk);
            workers.emplace_back([&, j, first, last] { translate_range(first, last, parts[j]); });
        }
        for (auto& w : workers) w.join();
        for (const auto& part : parts) result.matches.append(part);
    }
    result.matches.canonicalize();
    return result;
}

inline MatchSet sbsm_match(const PatternGraph& pattern, const Chip& chip, const SbsmOptions& options = {}) {
    return sbsm_search(pattern, chip, options).matches;
}

}  // namespace symmap
