#pragma once

// Mapping scoring (per-mapping loop and bulk vectorized form) and the
// end-to-end symmetry-based circuit mapping pipeline.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "symmap/chip.hpp"
#include "symmap/circuit.hpp"
#include "symmap/errors.hpp"
#include "symmap/matching.hpp"
#include "symmap/symmetry.hpp"
#include "symmap/topology.hpp"

namespace symmap {

/// Estimated fidelity per mapping, aligned with the mapping list.
using ScoreVector = std::vector<double>;

namespace detail {

// Column of each gate operand within the match rows.
struct ResolvedGate {
    GateKind kind;
    std::size_t a;
    std::size_t b;
};

inline std::vector<ResolvedGate> resolve_gates(const MatchSet& mappings, const Circuit& c) {
    std::unordered_map<Vertex, std::size_t> column;
    for (std::size_t i = 0; i < mappings.domain().size(); ++i) column.emplace(mappings.domain()[i], i);
    const auto col = [&](Vertex q) {
        const auto it = column.find(q);
        if (it == column.end()) throw invalid_input("mappings do not place logical qubit " + std::to_string(q));
        return it->second;
    };
    std::vector<ResolvedGate> out;
    out.reserve(c.gates().size());
    for (const Gate& g : c.gates()) {
        const GateKind k = g.kind();
        out.push_back({k, col(g.qubits[0]), k == GateKind::two_q ? col(g.qubits[1]) : 0});
    }
    return out;
}

inline std::uint64_t edge_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

[[noreturn]] inline void missing_coupler(Vertex u, Vertex v) {
    throw invalid_input("mapping uses coupler {" + std::to_string(std::min(u, v)) + "," +
                        std::to_string(std::max(u, v)) + "} which has no two-qubit error rate");
}

[[noreturn]] inline void missing_qubit(Vertex v) {
    throw invalid_input("mapping uses qubit " + std::to_string(v) + " which is not in the error map");
}

}  // namespace detail

/// Reference scorer: walks the mappings one at a time and, for each, multiplies
/// (1 - rate) over the gates, looking rates up in a coupler dictionary.
inline ScoreVector score_loop(const MatchSet& mappings, const Circuit& c, const ErrorMap& e) {
    const auto gates = detail::resolve_gates(mappings, c);
    std::unordered_map<std::uint64_t, double> two_q;
    two_q.reserve(e.support().size());
    for (std::size_t k = 0; k < e.support().size(); ++k) {
        const auto [u, v] = e.support().edges()[k];
        two_q.emplace(detail::edge_key(u, v), e.e2()[k]);
    }
    const std::size_t n = e.qubits();

    ScoreVector scores(mappings.size(), 1.0);
    for (std::size_t i = 0; i < mappings.size(); ++i) {
        const auto row = mappings.row(i);
        double fidelity = 1.0;
        for (const auto& g : gates) {
            const Vertex pa = row[g.a];
            if (pa >= n) detail::missing_qubit(pa);
            double rate = 0.0;
            switch (g.kind) {
                case GateKind::one_q: rate = e.e1()[pa]; break;
                case GateKind::measure: rate = e.em()[pa]; break;
                case GateKind::two_q: {
                    const Vertex pb = row[g.b];
                    const auto it = two_q.find(detail::edge_key(pa, pb));
                    if (it == two_q.end()) detail::missing_coupler(pa, pb);
                    rate = it->second;
                    break;
                }
            }
            fidelity *= 1.0 - rate;
        }
        scores[i] = fidelity;
    }
    return scores;
}

struct ScoreOptions {
    static constexpr std::size_t block = 2048;
    unsigned threads = 1;
};

/// Bulk scorer. S starts as a vector of ones; for every gate the error rate of
/// that gate under every mapping is gathered into one contiguous vector E'
/// and folded in as S <- S ⊙ (1 - E'). The mapping axis may be split across
/// threads; each slice is folded independently.
inline ScoreVector score_vectorized(const MatchSet& mappings, const Circuit& c, const ErrorMap& e,
                                    const ScoreOptions& options = {}) {
    const auto gates = detail::resolve_gates(mappings, c);
    const std::size_t count = mappings.size();
    const std::size_t width = mappings.width();
    const std::size_t n = e.qubits();
    const CouplingGraph& couplers = e.support();
    const double* e1 = e.e1().data();
    const double* em = e.em().data();
    const double* e2 = e.e2().data();

    ScoreVector scores(count, 1.0);
    // Each slice is folded in cache-sized blocks of the mapping axis.
    const auto fold = [&](std::size_t first, std::size_t last) {
        const std::size_t block = std::min<std::size_t>(ScoreOptions::block, last - first);
        std::vector<Vertex> columns(width * block);
        std::vector<double> rates(block);
        const Vertex* data = mappings.data().data();
        for (std::size_t lo = first; lo < last; lo += block) {
            const std::size_t len = std::min(block, last - lo);
            for (std::size_t i = 0; i < len; ++i) {
                const Vertex* row = data + (lo + i) * width;
                for (std::size_t j = 0; j < width; ++j) {
                    if (row[j] >= n) detail::missing_qubit(row[j]);
                    columns[j * block + i] = row[j];
                }
            }
            double* s = scores.data() + lo;
            for (const auto& g : gates) {
                const Vertex* qa = columns.data() + g.a * block;
                switch (g.kind) {
                    case GateKind::one_q:
                        for (std::size_t i = 0; i < len; ++i) rates[i] = e1[qa[i]];
                        break;
                    case GateKind::measure:
                        for (std::size_t i = 0; i < len; ++i) rates[i] = em[qa[i]];
                        break;
                    case GateKind::two_q: {
                        const Vertex* qb = columns.data() + g.b * block;
                        for (std::size_t i = 0; i < len; ++i) {
                            const auto k = couplers.edge_index(qa[i], qb[i]);
                            if (!k) detail::missing_coupler(qa[i], qb[i]);
                            rates[i] = e2[*k];
                        }
                        break;
                    }
                }
                for (std::size_t i = 0; i < len; ++i) s[i] *= 1.0 - rates[i];
            }
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, count));
    if (jobs == 1) {
        fold(0, count);
        return scores;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> failures(jobs);
    const std::size_t chunk = (count + jobs - 1) / jobs;
    for (std::size_t j = 0; j < jobs; ++j) {
        const std::size_t first = std::min(count, j * chunk);
        const std::size_t last = std::min(count, first + chunk);
        workers.emplace_back([&, j, first, last] {
            try {
                fold(first, last);
            } catch (...) {
                failures[j] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return scores;
}

/// Row-wise composition L ∘ pre. `pre` sends each entry of `domain` to a
/// column of L; the result's rows are indexed by `domain`.
inline MatchSet compose(const MatchSet& mappings, const Mapping& pre, std::vector<Vertex> domain) {
    if (pre.image.size() != domain.size()) throw invalid_input("initial mapping and domain sizes differ");
    for (Vertex col : pre.image) {
        if (col >= mappings.width()) throw invalid_input("initial mapping points outside the pattern");
    }
    MatchSet out(std::move(domain));
    out.reserve(mappings.size());
    std::vector<Vertex> row(pre.image.size());
    for (std::size_t i = 0; i < mappings.size(); ++i) {
        const auto r = mappings.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = r[pre.image[j]];
        out.push_back(std::span<const Vertex>(row));
    }
    return out;
}

struct MappingResult {
    MatchSet mappings;             // canonical order, rows indexed by logical qubit
    ScoreVector scores;            // aligned with mappings
    std::vector<std::size_t> ranking;  // indices by descending score, ties in canonical order

    [[nodiscard]] std::size_t best_index() const { return ranking.front(); }
    [[nodiscard]] Mapping best() const { return mappings.mapping(best_index()); }
    [[nodiscard]] double best_score() const { return scores[best_index()]; }
};

namespace detail {

inline std::vector<std::size_t> rank_scores(const ScoreVector& scores) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return idx;
}

[[noreturn]] inline void report_no_fit(const PatternGraph& pattern, const Chip& chip) {
    const std::size_t pd = pattern.graph.max_degree();
    const std::size_t cd = chip.graph().max_degree();
    std::string msg = "circuit does not fit topology: no embedding of its " + std::to_string(pattern.order()) +
                      "-qubit interaction graph";
    if (pd > cd) {
        msg += " (interaction graph max degree " + std::to_string(pd) + " exceeds chip max degree " +
               std::to_string(cd) + ")";
    }
    throw does_not_fit(msg);
}

inline MappingResult finish(MatchSet matches, ScoreVector scores) {
    MappingResult r{std::move(matches), std::move(scores), {}};
    r.ranking = rank_scores(r.scores);
    return r;
}

}  // namespace detail

struct SbcmOptions {
    unsigned threads = 1;
};

/// Symmetry-based circuit mapping: interaction graph -> symmetry-reduced
/// matching -> composition with the initial mapping -> bulk scoring.
///
/// The input circuit is taken as already precompiled, so the initial mapping
/// is the identity on its logical qubits.
inline MappingResult sbcm(const Circuit& c, const Chip& chip, const ErrorMap& e, const SbcmOptions& options = {}) {
    const PatternGraph pattern = interaction_graph(c);
    MatchSet found = sbsm_match(pattern, chip, {options.threads});
    if (found.empty()) detail::report_no_fit(pattern, chip);
    MatchSet mappings = compose(found, identity_mapping(pattern.order()), pattern.labels);
    ScoreVector scores = score_vectorized(mappings, c, e, {options.threads});
    return detail::finish(std::move(mappings), std::move(scores));
}

/// Full-graph pipeline used as the oracle: VF2 over the whole chip followed by
/// the per-mapping scoring loop.
inline MappingResult baseline_mapping(const Circuit& c, const Chip& chip, const ErrorMap& e) {
    const PatternGraph pattern = interaction_graph(c);
    MatchSet found = vf2_match(pattern, chip.graph());
    if (found.empty()) detail::report_no_fit(pattern, chip);
    ScoreVector scores = score_loop(found, c, e);
    return detail::finish(std::move(found), std::move(scores));
}

}  // namespace symmap
