#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symmap/errors.hpp"
#include "symmap/graph.hpp"

namespace symmap {

/// A shift of the ideal periodic lattice. Translations compose by adding
/// shifts; the identity is (0,0).
struct Translation {
    Coord shift;

    [[nodiscard]] constexpr Coord operator()(Coord c) const { return c + shift; }
    [[nodiscard]] constexpr Translation inverse() const { return {-shift}; }
    [[nodiscard]] static constexpr Translation identity() { return {}; }

    friend constexpr Translation operator+(Translation a, Translation b) { return {a.shift + b.shift}; }
    friend constexpr Translation operator-(Translation a, Translation b) { return {a.shift - b.shift}; }
    friend constexpr auto operator<=>(const Translation&, const Translation&) = default;
};

/// Anything that moves lattice coordinates around. Translations are the only
/// symmetries shipped; mirrors and rotations of the ideal lattice slot in here.
template <class S>
concept LatticeSymmetry = requires(const S& s, Coord c) {
    { s(c) } -> std::convertible_to<Coord>;
};

/// Axis-aligned coordinate box, inclusive on both ends.
struct Box {
    Coord min;
    Coord max;

    [[nodiscard]] bool contains(Coord c) const {
        return c.x >= min.x && c.x <= max.x && c.y >= min.y && c.y <= max.y;
    }
};

inline Box bounding_box(std::span<const Coord> cs) {
    if (cs.empty()) throw invalid_input("bounding box of an empty coordinate list");
    Box b{cs.front(), cs.front()};
    for (const Coord& c : cs) {
        b.min = {std::min(b.min.x, c.x), std::min(b.min.y, c.y)};
        b.max = {std::max(b.max.x, c.x), std::max(b.max.y, c.y)};
    }
    return b;
}

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

/// Free abelian group generated by up to two lattice shifts.
///
/// Every coordinate p splits uniquely as p = rep + k0*g0 + k1*g1 with `rep`
/// in a fixed fundamental domain; two coordinates lie in the same orbit iff
/// they share `rep`.
class TranslationGroup {
public:
    struct Decomposition {
        Coord rep;
        std::array<std::int64_t, 2> k{0, 0};
    };

    TranslationGroup() = default;

    TranslationGroup(std::vector<Translation> generators, Coord cell) : gens_(std::move(generators)), cell_(cell) {
        if (gens_.size() > 2) throw invalid_input("translation groups of rank > 2 are not supported");
        if (gens_.size() == 1 && gens_[0].shift == Coord{}) throw invalid_input("zero translation generator");
        if (gens_.size() == 2 && det() == 0) throw invalid_input("translation generators are linearly dependent");
    }

    [[nodiscard]] const std::vector<Translation>& generators() const noexcept { return gens_; }
    [[nodiscard]] Coord cell() const noexcept { return cell_; }
    [[nodiscard]] std::size_t rank() const noexcept { return gens_.size(); }

    [[nodiscard]] Translation element(std::int64_t k0, std::int64_t k1 = 0) const {
        Coord s{};
        if (rank() >= 1) s = s + Coord{k0 * gens_[0].shift.x, k0 * gens_[0].shift.y};
        if (rank() >= 2) s = s + Coord{k1 * gens_[1].shift.x, k1 * gens_[1].shift.y};
        return {s};
    }

    [[nodiscard]] Decomposition decompose(Coord p) const {
        if (rank() == 0) return {p, {0, 0}};
        if (rank() == 1) {
            const Coord g = gens_[0].shift;
            const std::int64_t k = detail::floor_div(p.x * g.x + p.y * g.y, g.x * g.x + g.y * g.y);
            return {p - element(k).shift, {k, 0}};
        }
        const Coord g0 = gens_[0].shift;
        const Coord g1 = gens_[1].shift;
        const std::int64_t d = det();
        const std::int64_t k0 = detail::floor_div(g1.y * p.x - g1.x * p.y, d);
        const std::int64_t k1 = detail::floor_div(-g0.y * p.x + g0.x * p.y, d);
        return {p - element(k0, k1).shift, {k0, k1}};
    }

    [[nodiscard]] bool contains(Translation t) const { return decompose(t.shift).rep == Coord{}; }

    /// Every group element t with box(set) + t inside `target`. Translating a
    /// set by anything else sends some point outside the target box.
    [[nodiscard]] std::vector<Translation> elements_within(const Box& set, const Box& target) const {
        const Coord lo = target.min - set.min;
        const Coord hi = target.max - set.max;
        std::vector<Translation> out;
        if (lo.x > hi.x || lo.y > hi.y) return out;
        const Box window{lo, hi};
        if (rank() == 0) {
            if (window.contains({})) out.push_back(Translation::identity());
            return out;
        }
        // Coefficient ranges from the window's corners, widened by one step
        // to absorb rounding, then filtered exactly.
        std::array<double, 2> kmin{1e300, 1e300};
        std::array<double, 2> kmax{-1e300, -1e300};
        for (Coord c : {lo, hi, Coord{lo.x, hi.y}, Coord{hi.x, lo.y}}) {
            const auto k = coefficients(c);
            for (int i = 0; i < 2; ++i) {
                kmin[i] = std::min(kmin[i], k[i]);
                kmax[i] = std::max(kmax[i], k[i]);
            }
        }
        const auto a0 = static_cast<std::int64_t>(std::floor(kmin[0])) - 1;
        const auto a1 = static_cast<std::int64_t>(std::ceil(kmax[0])) + 1;
        std::int64_t b0 = 0;
        std::int64_t b1 = 0;
        if (rank() == 2) {
            b0 = static_cast<std::int64_t>(std::floor(kmin[1])) - 1;
            b1 = static_cast<std::int64_t>(std::ceil(kmax[1])) + 1;
        }
        for (std::int64_t b = b0; b <= b1; ++b) {
            for (std::int64_t a = a0; a <= a1; ++a) {
                const Translation t = element(a, b);
                if (window.contains(t.shift)) out.push_back(t);
            }
        }
        return out;
    }

private:
    [[nodiscard]] std::int64_t det() const {
        return gens_[0].shift.x * gens_[1].shift.y - gens_[1].shift.x * gens_[0].shift.y;
    }

    // Real-valued coordinates of p in the generator basis (projection for rank 1).
    [[nodiscard]] std::array<double, 2> coefficients(Coord p) const {
        if (rank() == 1) {
            const Coord g = gens_[0].shift;
            return {static_cast<double>(p.x * g.x + p.y * g.y) / static_cast<double>(g.x * g.x + g.y * g.y), 0.0};
        }
        const Coord g0 = gens_[0].shift;
        const Coord g1 = gens_[1].shift;
        const auto d = static_cast<double>(det());
        return {static_cast<double>(g1.y * p.x - g1.x * p.y) / d, static_cast<double>(-g0.y * p.x + g0.x * p.y) / d};
    }

    std::vector<Translation> gens_;
    Coord cell_{1, 1};
};

}  // namespace symmap
