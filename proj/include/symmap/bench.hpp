#pragma once

// Wall-clock benchmark harness comparing the full-graph and symmetry-based
// matchers, the two scorers, and the two end-to-end pipelines, with CSV and
// SVG output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symmap/circuit.hpp"
#include "symmap/errors.hpp"
#include "symmap/io.hpp"
#include "symmap/matching.hpp"
#include "symmap/scoring.hpp"
#include "symmap/topology.hpp"

namespace symmap::bench {

/// Raised when two algorithms disagree inside a bench cell.
class mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* csv_header = "family,n,algorithm,wall_time_s,matches,reduced_region_size,repetitions";

struct BenchRecord {
    Family family = Family::grid;
    std::string pattern;  // not part of the CSV; used for grouping
    std::size_t n = 0;
    std::string algorithm;  // vf2 | sbsm | score_loop | score_vec | mapomatic_pipeline | sbcm_pipeline
    double wall_time = 0.0;
    std::size_t matches = 0;
    std::optional<std::size_t> reduced_region_size;
    std::size_t repetitions = 0;
};

struct BenchPattern {
    std::string name;
    Circuit circuit;  // scored circuit; its interaction graph is the pattern
};

/// Circuit used to score a bare pattern graph: one H per vertex, then one CX
/// per edge.
inline Circuit circuit_for_pattern(const CouplingGraph& p) {
    std::vector<Gate> gates;
    for (Vertex v = 0; v < p.order(); ++v) gates.push_back({"h", {v}});
    for (const auto& [u, v] : p.edges()) gates.push_back({"cx", {u, v}});
    return Circuit(p.order(), std::move(gates));
}

struct Suite {
    std::vector<Family> families;
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    std::map<Family, std::vector<std::pair<std::size_t, std::size_t>>> extra_sizes;  // e.g. the --full tier
    std::vector<BenchPattern> patterns;
    std::size_t reps = 5;
    bool warmup = true;
    bool parallel_validate = false;
    bool pipelines = true;
    unsigned score_threads = 1;  // score_vec only
    std::ostream* log = nullptr;
};

/// Suite JSON: {"families": [...], "sizes": [[r,c],...], "patterns": [file,...],
/// "reps": int, "warmup": bool, "full_sizes": {family: [[r,c],...]}}.
/// Pattern paths are resolved against `base`. A pattern file may hold a
/// circuit or a bare graph.
inline Suite suite_from_json(const io::json& j, const std::filesystem::path& base, bool full = false) {
    using io::detail::as;
    using io::detail::field;
    Suite s;
    for (const auto& f : as<std::vector<std::string>>(field(j, "families", "suite"), "suite.families")) {
        s.families.push_back(family_from_string(f));
    }
    s.sizes = as<std::vector<std::pair<std::size_t, std::size_t>>>(field(j, "sizes", "suite"), "suite.sizes");
    for (const auto& name : as<std::vector<std::string>>(field(j, "patterns", "suite"), "suite.patterns")) {
        const std::filesystem::path path = std::filesystem::path(name).is_absolute() ? std::filesystem::path(name) : base / name;
        const io::json pj = io::read_file(path.string());
        Circuit c = pj.is_object() && pj.contains("gates")
                        ? io::circuit_from_json(pj, path.string())
                        : circuit_for_pattern(io::pattern_from_json(pj, path.string()).graph);
        s.patterns.push_back({path.stem().string(), std::move(c)});
    }
    if (const auto it = j.find("reps"); it != j.end()) s.reps = as<std::size_t>(*it, "suite.reps");
    if (const auto it = j.find("warmup"); it != j.end()) s.warmup = as<bool>(*it, "suite.warmup");
    if (full) {
        if (const auto it = j.find("full_sizes"); it != j.end()) {
            for (const auto& [k, v] : it->items()) {
                s.extra_sizes[family_from_string(k)] =
                    as<std::vector<std::pair<std::size_t, std::size_t>>>(v, "suite.full_sizes." + k);
            }
        } else if (std::find(s.families.begin(), s.families.end(), Family::octagonal) != s.families.end()) {
            s.extra_sizes[Family::octagonal] = {{105, 105}};
        }
    }
    for (const auto& [r, c] : s.sizes) {
        if (r == 0 || c == 0) throw invalid_input("suite.sizes: dimensions must be positive");
    }
    return s;
}

/// Median wall time of `reps` timed calls after one untimed warm-up call.
template <class F>
double time_median(F&& f, std::size_t reps, bool warmup = true) {
    using clock = std::chrono::steady_clock;
    if (warmup) f();
    std::vector<double> t;
    t.reserve(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        const auto start = clock::now();
        f();
        t.push_back(std::chrono::duration<double>(clock::now() - start).count());
    }
    std::sort(t.begin(), t.end());
    const std::size_t mid = t.size() / 2;
    return t.size() % 2 ? t[mid] : 0.5 * (t[mid - 1] + t[mid]);
}

namespace detail {

inline std::string describe_row(const MatchSet& ms, std::size_t i) {
    std::string s = "[";
    const auto r = ms.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + std::to_string(r[k]);
    return s + "]";
}

inline void check_same_matches(const MatchSet& expect, const MatchSet& got, const std::string& cell) {
    if (expect == got) return;
    std::ostringstream msg;
    msg << cell << ": sbsm found " << got.size() << " matches, vf2 " << expect.size();
    std::size_t shown = 0;
    for (std::size_t i = 0, j = 0; (i < expect.size() || j < got.size()) && shown < 3;) {
        const bool take_expect = j >= got.size() ||
                                 (i < expect.size() && std::lexicographical_compare(expect.row(i).begin(), expect.row(i).end(),
                                                                                    got.row(j).begin(), got.row(j).end()));
        const bool take_got = i >= expect.size() ||
                              (j < got.size() && std::lexicographical_compare(got.row(j).begin(), got.row(j).end(),
                                                                              expect.row(i).begin(), expect.row(i).end()));
        if (take_expect) {
            msg << "; only vf2 " << describe_row(expect, i++);
            ++shown;
        } else if (take_got) {
            msg << "; only sbsm " << describe_row(got, j++);
            ++shown;
        } else {
            ++i;
            ++j;
        }
    }
    throw mismatch(msg.str());
}

inline double max_relative_gap(const ScoreVector& a, const ScoreVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
        if (scale > 0) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

inline void check_same_scores(const ScoreVector& loop, const ScoreVector& vec, const std::string& cell) {
    if (loop.size() != vec.size()) throw mismatch(cell + ": score vectors differ in length");
    if (const double gap = max_relative_gap(loop, vec); gap > 1e-12) {
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const double scale = std::max(std::abs(loop[i]), std::abs(vec[i]));
            if (scale > 0 && std::abs(loop[i] - vec[i]) / scale > 1e-12) {
                throw mismatch(cell + ": loop and vectorized scores differ at mapping " + std::to_string(i) + " (" +
                               std::to_string(loop[i]) + " vs " + std::to_string(vec[i]) + ")");
            }
        }
    }
}

}  // namespace detail

/// Runs every (family, pattern, size) cell. Within a cell both matchers,
/// both scorers and both pipelines run on identical inputs; their outputs
/// are compared before the cell's records are kept.
inline std::vector<BenchRecord> run_bench(const Suite& suite) {
    if (suite.reps == 0) throw invalid_input("bench needs at least one repetition");
    std::vector<BenchRecord> records;
    std::vector<std::function<void()>> deferred;

    for (const Family family : suite.families) {
        auto sizes = suite.sizes;
        if (const auto it = suite.extra_sizes.find(family); it != suite.extra_sizes.end()) {
            sizes.insert(sizes.end(), it->second.begin(), it->second.end());
        }
        for (const BenchPattern& bp : suite.patterns) {
            const PatternGraph pattern = interaction_graph(bp.circuit);
            for (const auto& [r, c] : sizes) {
                const Chip chip = make_chip(family, r, c);
                const ErrorMap errors = gaussian_error_map(chip);
                const std::string cell =
                    std::string(to_string(family)) + " " + std::to_string(r) + "x" + std::to_string(c) + " " + bp.name;
                if (suite.log) *suite.log << "bench " << cell << " (n=" << chip.order() << ")" << std::endl;

                const auto add = [&](const std::string& algo, double t, std::size_t matches,
                                     std::optional<std::size_t> region = std::nullopt) {
                    records.push_back({family, bp.name, chip.order(), algo, t, matches, region, suite.reps});
                };

                MatchSet by_vf2;
                const double t_vf2 = time_median([&] { by_vf2 = vf2_match(pattern, chip.graph()); }, suite.reps,
                                                 suite.warmup);
                SbsmResult by_sbsm;
                const double t_sbsm = time_median([&] { by_sbsm = sbsm_search(pattern, chip); }, suite.reps,
                                                  suite.warmup);
                MatchSet mappings = compose(by_vf2, identity_mapping(pattern.order()), pattern.labels);
                ScoreVector loop;
                const double t_loop =
                    time_median([&] { loop = score_loop(mappings, bp.circuit, errors); }, suite.reps, suite.warmup);
                ScoreVector vec;
                const double t_vec = time_median(
                    [&] { vec = score_vectorized(mappings, bp.circuit, errors, {suite.score_threads}); }, suite.reps,
                    suite.warmup);

                std::optional<MappingResult> base;
                std::optional<MappingResult> fast;
                double t_base = 0.0;
                double t_fast = 0.0;
                const bool run_pipelines = suite.pipelines && !by_vf2.empty();
                if (run_pipelines) {
                    t_base = time_median([&] { base = baseline_mapping(bp.circuit, chip, errors); }, suite.reps,
                                         suite.warmup);
                    t_fast = time_median([&] { fast = sbcm(bp.circuit, chip, errors); }, suite.reps, suite.warmup);
                }

                auto validate = [cell, run_pipelines, vf2 = std::move(by_vf2), sb = by_sbsm.matches,
                                 loop = std::move(loop), vec = std::move(vec), base = std::move(base),
                                 fast = std::move(fast)] {
                    detail::check_same_matches(vf2, sb, cell);
                    detail::check_same_scores(loop, vec, cell);
                    if (run_pipelines) {
                        if (base->mappings != fast->mappings) throw mismatch(cell + ": pipelines found different mappings");
                        if (base->best_score() != fast->best_score()) {
                            throw mismatch(cell + ": pipelines disagree on the best score");
                        }
                    }
                };
                const std::size_t count = by_sbsm.matches.size();
                if (suite.parallel_validate) {
                    deferred.push_back(std::move(validate));
                } else {
                    validate();
                }

                add("vf2", t_vf2, count);
                add("sbsm", t_sbsm, count, by_sbsm.region_order);
                add("score_loop", t_loop, count);
                add("score_vec", t_vec, count);
                if (run_pipelines) {
                    add("mapomatic_pipeline", t_base, count);
                    add("sbcm_pipeline", t_fast, count, by_sbsm.region_order);
                }
            }
        }
    }

    if (!deferred.empty()) {
        std::vector<std::future<void>> checks;
        for (auto& v : deferred) checks.push_back(std::async(std::launch::async, v));
        for (auto& f : checks) f.get();
    }
    return records;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << csv_header << '\n';
    char buf[64];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%.9g", r.wall_time);
        out << to_string(r.family) << ',' << r.n << ',' << r.algorithm << ',' << buf << ',' << r.matches << ',';
        if (r.reduced_region_size) out << *r.reduced_region_size;
        out << ',' << r.repetitions << '\n';
    }
}

/// Least-squares slope of log(wall time) against log(n) over the `top`
/// largest sizes recorded for (family, pattern, algorithm).
inline std::optional<double> loglog_slope(const std::vector<BenchRecord>& records, Family family,
                                          const std::string& pattern, const std::string& algorithm,
                                          std::size_t top = 3) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records) {
        if (r.family == family && r.pattern == pattern && r.algorithm == algorithm && r.wall_time > 0) {
            pts.emplace_back(static_cast<double>(r.n), r.wall_time);
        }
    }
    std::sort(pts.begin(), pts.end());
    if (pts.size() > top) pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(top));
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, t] : pts) {
        const double x = std::log(n);
        const double y = std::log(t);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto k = static_cast<double>(pts.size());
    const double den = k * sxx - sx * sx;
    if (den == 0) return std::nullopt;
    return (k * sxy - sx * sy) / den;
}

/// Log-log runtime-vs-n chart, one panel per family and one series per
/// algorithm (and pattern, when several were benchmarked).
inline std::string render_svg(const std::vector<BenchRecord>& records) {
    static const std::map<std::string, const char*> colors{
        {"vf2", "#2ca02c"},        {"sbsm", "#d62728"},
        {"score_loop", "#1f77b4"}, {"score_vec", "#ff7f0e"},
        {"mapomatic_pipeline", "#9467bd"}, {"sbcm_pipeline", "#8c564b"}};
    std::vector<Family> families;
    std::vector<std::string> patterns;
    for (const auto& r : records) {
        if (std::find(families.begin(), families.end(), r.family) == families.end()) families.push_back(r.family);
        if (std::find(patterns.begin(), patterns.end(), r.pattern) == patterns.end()) patterns.push_back(r.pattern);
    }
    const double pw = 420, ph = 320, ml = 60, mr = 20, mt = 30, mb = 50;
    const double width = std::max<double>(1, static_cast<double>(families.size())) * pw;
    const double height = ph + 24.0 * static_cast<double>(colors.size());
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t f = 0; f < families.size(); ++f) {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& r : records) {
            if (r.family != families[f] || r.wall_time <= 0) continue;
            xmin = std::min(xmin, std::log10(static_cast<double>(r.n)));
            xmax = std::max(xmax, std::log10(static_cast<double>(r.n)));
            ymin = std::min(ymin, std::log10(r.wall_time));
            ymax = std::max(ymax, std::log10(r.wall_time));
        }
        if (xmin > xmax) continue;
        xmin = std::floor(xmin);
        xmax = std::max(std::ceil(xmax), xmin + 1);
        ymin = std::floor(ymin);
        ymax = std::max(std::ceil(ymax), ymin + 1);
        const double ox = static_cast<double>(f) * pw;
        const auto px = [&](double lx) { return ox + ml + (lx - xmin) / (xmax - xmin) * (pw - ml - mr); };
        const auto py = [&](double ly) { return mt + (ymax - ly) / (ymax - ymin) * (ph - mt - mb); };

        svg << "<text x=\"" << ox + pw / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">"
            << to_string(families[f]) << "</text>\n";
        svg << "<rect x=\"" << px(xmin) << "\" y=\"" << py(ymax) << "\" width=\"" << px(xmax) - px(xmin)
            << "\" height=\"" << py(ymin) - py(ymax) << "\" fill=\"none\" stroke=\"#444\"/>\n";
        for (double e = xmin; e <= xmax; e += 1) {
            svg << "<text x=\"" << px(e) << "\" y=\"" << py(ymin) + 14 << "\" text-anchor=\"middle\">1e" << e
                << "</text>\n";
        }
        for (double e = ymin; e <= ymax; e += 1) {
            svg << "<line x1=\"" << px(xmin) << "\" x2=\"" << px(xmax) << "\" y1=\"" << py(e) << "\" y2=\"" << py(e)
                << "\" stroke=\"#ddd\"/>\n";
            svg << "<text x=\"" << px(xmin) - 4 << "\" y=\"" << py(e) + 4 << "\" text-anchor=\"end\">1e" << e
                << "</text>\n";
        }
        svg << "<text x=\"" << ox + pw / 2 << "\" y=\"" << ph - 12 << "\" text-anchor=\"middle\">qubits (n)</text>\n";
        svg << "<text x=\"" << ox + 14 << "\" y=\"" << (mt + ph - mb) / 2 << "\" transform=\"rotate(-90 " << ox + 14
            << ' ' << (mt + ph - mb) / 2 << ")\" text-anchor=\"middle\">wall time (s)</text>\n";

        for (const auto& [algo, color] : colors) {
            for (const auto& pat : patterns) {
                std::vector<std::pair<double, double>> pts;
                for (const auto& r : records) {
                    if (r.family == families[f] && r.algorithm == algo && r.pattern == pat && r.wall_time > 0) {
                        pts.emplace_back(std::log10(static_cast<double>(r.n)), std::log10(r.wall_time));
                    }
                }
                if (pts.empty()) continue;
                std::sort(pts.begin(), pts.end());
                svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
                for (auto [x, y] : pts) svg << px(x) << ',' << py(y) << ' ';
                svg << "\"/>\n";
                for (auto [x, y] : pts) {
                    svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"" << color
                        << "\"/>\n";
                }
            }
        }
    }
    double ly = ph + 6;
    for (const auto& [algo, color] : colors) {
        svg << "<rect x=\"" << ml << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>";
        svg << "<text x=\"" << ml + 18 << "\" y=\"" << ly + 10 << "\">" << algo << "</text>\n";
        ly += 24;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace symmap::bench
