#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "symmap/errors.hpp"
#include "symmap/graph.hpp"
#include "symmap/matching.hpp"

namespace symmap {

// Error class a gate draws its rate from.
enum class GateKind { one_q, two_q, measure };

struct Gate {
    std::string name;
    std::vector<Vertex> qubits;

    /// Arity decides, except that "measure"/"m" always read out.
    [[nodiscard]] GateKind kind() const {
        if (name == "measure" || name == "m") return GateKind::measure;
        return qubits.size() == 2 ? GateKind::two_q : GateKind::one_q;
    }
};

/// Ordered gate list over logical qubits 0..num_qubits-1.
class Circuit {
public:
    Circuit() = default;

    Circuit(std::size_t num_qubits, std::vector<Gate> gates) : num_qubits_(num_qubits), gates_(std::move(gates)) {
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            const auto where = [&] { return "gate " + std::to_string(i) + " (" + g.name + ")"; };
            if (g.qubits.empty() || g.qubits.size() > 2) {
                throw invalid_input(where() + " acts on " + std::to_string(g.qubits.size()) +
                                    " qubits; only 1- and 2-qubit gates are supported");
            }
            if (g.kind() == GateKind::measure && g.qubits.size() != 1) {
                throw invalid_input(where() + " measures more than one qubit");
            }
            for (Vertex q : g.qubits) {
                if (q >= num_qubits_) {
                    throw invalid_input(where() + " uses qubit " + std::to_string(q) + " but the circuit has " +
                                        std::to_string(num_qubits_));
                }
            }
            if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
                throw invalid_input(where() + " has identical operands");
            }
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }

    friend bool operator==(const Circuit& a, const Circuit& b) {
        if (a.num_qubits_ != b.num_qubits_ || a.gates_.size() != b.gates_.size()) return false;
        for (std::size_t i = 0; i < a.gates_.size(); ++i) {
            if (a.gates_[i].name != b.gates_[i].name || a.gates_[i].qubits != b.gates_[i].qubits) return false;
        }
        return true;
    }

private:
    std::size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

/// Interaction graph over the qubits the circuit touches, labelled with their
/// logical ids. Idle qubits are left out.
inline PatternGraph interaction_graph(const Circuit& c) {
    std::vector<Vertex> used;
    for (const Gate& g : c.gates()) used.insert(used.end(), g.qubits.begin(), g.qubits.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    if (used.empty()) throw invalid_input("circuit has no gates");

    std::vector<Vertex> local(c.num_qubits(), 0);
    for (Vertex i = 0; i < used.size(); ++i) local[used[i]] = i;
    std::vector<Edge> edges;
    for (const Gate& g : c.gates()) {
        if (g.qubits.size() != 2) continue;
        Vertex a = local[g.qubits[0]];
        Vertex b = local[g.qubits[1]];
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    CouplingGraph g(used.size(), std::move(edges));

    const Vertex seed[] = {0};
    if (const auto dist = bfs_distances(g, seed);
        std::any_of(dist.begin(), dist.end(), [](Distance d) { return d == infinite_distance; })) {
        // Report each component by its logical qubits.
        std::string msg = "interaction graph is disconnected; components:";
        std::vector<bool> seen(g.order(), false);
        for (Vertex v = 0; v < g.order(); ++v) {
            if (seen[v]) continue;
            const Vertex from[] = {v};
            const auto d = bfs_distances(g, from);
            msg += " {";
            bool first = true;
            for (Vertex u = 0; u < g.order(); ++u) {
                if (d[u] == infinite_distance) continue;
                seen[u] = true;
                msg += (first ? "" : ",") + std::to_string(used[u]);
                first = false;
            }
            msg += "}";
        }
        throw invalid_input(msg);
    }
    return PatternGraph(std::move(g), std::move(used));
}

/// 5-qubit Deutsch-Jozsa with a balanced oracle: inputs 0..3, ancilla 4.
/// Its interaction graph is the star K1,4 centred on the ancilla.
inline Circuit deutsch_jozsa_circuit() {
    std::vector<Gate> gates;
    gates.push_back({"x", {4}});
    for (Vertex q = 0; q < 5; ++q) gates.push_back({"h", {q}});
    for (Vertex q = 0; q < 4; ++q) gates.push_back({"cx", {q, 4}});
    for (Vertex q = 0; q < 4; ++q) gates.push_back({"h", {q}});
    for (Vertex q = 0; q < 4; ++q) gates.push_back({"measure", {q}});
    return Circuit(5, std::move(gates));
}

/// The same algorithm precompiled for a line of five qubits 0-1-2-3-4 with
/// the ancilla starting in the middle; SWAPs walk it to each input. The
/// interaction graph is the path P5, which fits degree-3 lattices.
inline Circuit deutsch_jozsa_line_circuit() {
    std::vector<Gate> gates;
    gates.push_back({"x", {2}});
    for (Vertex q = 0; q < 5; ++q) gates.push_back({"h", {q}});
    gates.push_back({"cx", {1, 2}});
    gates.push_back({"cx", {3, 2}});
    gates.push_back({"swap", {1, 2}});
    gates.push_back({"cx", {0, 1}});
    gates.push_back({"swap", {1, 2}});
    gates.push_back({"swap", {2, 3}});
    gates.push_back({"cx", {4, 3}});
    // inputs now sit on 0, 1, 2 and 4
    for (Vertex q : {0U, 1U, 2U, 4U}) gates.push_back({"h", {q}});
    for (Vertex q : {0U, 1U, 2U, 4U}) gates.push_back({"measure", {q}});
    return Circuit(5, std::move(gates));
}

}  // namespace symmap
