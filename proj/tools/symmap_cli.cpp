// symmap command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error,
// 3 circuit does not fit topology.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "symmap/symmap.hpp"

namespace {

using namespace symmap;

enum Exit { ok = 0, usage = 1, data = 2, no_fit = 3 };

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
    } else {
        io::write_file(path, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry-based qubit mapping: topology generation, matching, scoring and benchmarking"};
    app.require_subcommand(1);
    std::string out;

    // gen-topology
    auto* gen_topo = app.add_subcommand("gen-topology", "Build a grid, octagonal or heavy_hex chip");
    std::string family;
    std::size_t rows = 0, cols = 0;
    std::string defects_file;
    gen_topo->add_option("family", family, "grid | octagonal | heavy_hex")
        ->required()
        ->check(CLI::IsMember({"grid", "octagonal", "heavy_hex", "heavy-hex"}));
    gen_topo->add_option("r", rows, "rows (grid: width)")->required();
    gen_topo->add_option("c", cols, "columns (grid: height)")->required();
    gen_topo->add_option("--defects", defects_file, "JSON {\"vertices\": [...], \"edges\": [[u,v],...]}");
    gen_topo->add_option("-o,--output", out, "output chip JSON (default stdout)");

    // gen-errors
    auto* gen_err = app.add_subcommand("gen-errors", "Synthesize a Gaussian error map for a chip");
    std::string chip_file;
    GaussianParams gp;
    double sigma = 0.0;
    std::vector<double> center;
    gen_err->add_option("chip", chip_file)->required();
    gen_err->add_option("--e-min", gp.e_min, "rate at the centre")->capture_default_str();
    gen_err->add_option("--e-max", gp.e_max, "asymptotic rate far from the centre")->capture_default_str();
    auto* sigma_opt = gen_err->add_option("--sigma", sigma, "spread (default: coordinate diameter / 4)");
    gen_err->add_option("--center", center, "x y (default: coordinate centroid)")->expected(2);
    gen_err->add_option("-o,--output", out);

    // match
    auto* match = app.add_subcommand("match", "Enumerate all embeddings of a pattern in a chip");
    std::string pattern_file;
    std::string algo = "sbsm";
    unsigned threads = 1;
    match->add_option("pattern", pattern_file, "graph or circuit JSON")->required();
    match->add_option("chip", chip_file)->required();
    match->add_option("--algo", algo)->check(CLI::IsMember({"vf2", "sbsm"}))->capture_default_str();
    match->add_option("--threads", threads)->capture_default_str();
    match->add_option("-o,--output", out);

    // score
    auto* score = app.add_subcommand("score", "Score every mapping of a match set");
    std::string matches_file, circuit_file, errors_file;
    std::string score_algo = "vec";
    score->add_option("matches", matches_file)->required();
    score->add_option("circuit", circuit_file)->required();
    score->add_option("errors", errors_file)->required();
    score->add_option("--algo", score_algo)->check(CLI::IsMember({"loop", "vec"}))->capture_default_str();
    score->add_option("--threads", threads)->capture_default_str();
    score->add_option("-o,--output", out);

    // remap
    auto* remap = app.add_subcommand("remap", "Pick the highest-fidelity placement of a circuit");
    remap->add_option("circuit", circuit_file)->required();
    remap->add_option("chip", chip_file)->required();
    remap->add_option("errors", errors_file)->required();
    remap->add_option("--threads", threads)->capture_default_str();
    remap->add_option("-o,--output", out);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
    std::string suite_file, svg_file;
    bool full = false, parallel_validate = false, quiet = false;
    std::size_t reps = 0;
    bench_cmd->add_option("suite", suite_file)->required();
    bench_cmd->add_option("-o,--output", out, "CSV output")->required();
    bench_cmd->add_option("--svg", svg_file, "log-log runtime plot");
    bench_cmd->add_option("--reps", reps, "override the suite's repetition count");
    bench_cmd->add_flag("--full", full, "add the large tier (octagonal 105x105 by default)");
    bench_cmd->add_flag("--parallel-validate", parallel_validate, "run equality checks concurrently");
    bench_cmd->add_option("--threads", threads, "threads for score_vec")->capture_default_str();
    bench_cmd->add_flag("-q,--quiet", quiet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*gen_topo) {
            Chip chip = make_chip(family_from_string(family), rows, cols);
            if (!defects_file.empty()) chip = chip.with_defects(io::defects_from_json(io::read_file(defects_file), defects_file));
            emit(out, io::to_json(chip).dump());
        } else if (*gen_err) {
            const Chip chip = io::chip_from_json(io::read_file(chip_file), chip_file);
            if (*sigma_opt) gp.sigma = sigma;
            if (!center.empty()) gp.center = std::array<double, 2>{center[0], center[1]};
            emit(out, io::to_json(gaussian_error_map(chip, gp)).dump());
        } else if (*match) {
            const PatternGraph pattern = io::pattern_from_json(io::read_file(pattern_file), pattern_file);
            const Chip chip = io::chip_from_json(io::read_file(chip_file), chip_file);
            const MatchSet ms = algo == "vf2" ? vf2_match(pattern, chip.graph()) : sbsm_match(pattern, chip, {threads});
            emit(out, io::dump_match_set(ms));
        } else if (*score) {
            const MatchSet ms = io::match_set_from_json(io::read_file(matches_file), matches_file);
            const Circuit c = io::circuit_from_json(io::read_file(circuit_file), circuit_file);
            const ErrorMap e = io::error_map_from_json(io::read_file(errors_file), errors_file);
            const ScoreVector s = score_algo == "loop" ? score_loop(ms, c, e) : score_vectorized(ms, c, e, {threads});
            std::vector<std::size_t> order(s.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::ostringstream text;
            io::write_scored(text, ms, s, order);
            emit(out, text.str());
        } else if (*remap) {
            const Circuit c = io::circuit_from_json(io::read_file(circuit_file), circuit_file);
            const Chip chip = io::chip_from_json(io::read_file(chip_file), chip_file);
            const ErrorMap e = io::error_map_from_json(io::read_file(errors_file), errors_file);
            if (e.qubits() != chip.order() || e.support().edges() != chip.graph().edges()) {
                throw invalid_input(errors_file + ": error map does not cover the chip's live qubits and couplers");
            }
            emit(out, io::dump_result(sbcm(c, chip, e, {threads})));
        } else if (*bench_cmd) {
            const auto base = std::filesystem::path(suite_file).parent_path();
            bench::Suite suite = bench::suite_from_json(io::read_file(suite_file), base, full);
            if (reps) suite.reps = reps;
            suite.parallel_validate = parallel_validate;
            suite.score_threads = threads;
            if (!quiet) suite.log = &std::cerr;
            const auto records = bench::run_bench(suite);
            std::ofstream csv(out);
            if (!csv) throw invalid_input("cannot write '" + out + "'");
            bench::write_csv(csv, records);
            if (!svg_file.empty()) io::write_file(svg_file, bench::render_svg(records));
            if (!quiet) {
                for (const Family f : suite.families) {
                    for (const auto& p : suite.patterns) {
                        for (const char* a : {"vf2", "sbsm"}) {
                            if (const auto k = bench::loglog_slope(records, f, p.name, a)) {
                                std::cerr << "slope " << to_string(f) << ' ' << p.name << ' ' << a << ' ' << *k << '\n';
                            }
                        }
                    }
                }
            }
        }
    } catch (const does_not_fit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return no_fit;
    } catch (const bench::mismatch& e) {
        std::cerr << "error: benchmark equality check failed: " << e.what() << '\n';
        return data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    }
    return ok;
}
