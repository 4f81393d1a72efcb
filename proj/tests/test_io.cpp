#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace symmap;

namespace {

std::string error_of(auto&& f) {
    try {
        f();
    } catch (const invalid_input& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(GraphJson, BitExactRoundTrip) {
    const std::string text = R"({"coords":[[0,0],[1,0],[0,1]],"edges":[[0,1],[0,2]],"n":3})";
    const CouplingGraph g = io::graph_from_json(io::parse(text));
    EXPECT_EQ(io::to_json(g).dump(), text);
    // Unsorted, reversed edges normalize to the canonical form.
    const CouplingGraph h = io::graph_from_json(io::parse(R"({"n":3,"edges":[[2,0],[1,0]]})"));
    EXPECT_EQ(io::to_json(h).dump(), R"({"edges":[[0,1],[0,2]],"n":3})");
    for (const Chip& chip : {grid(4, 3), octagonal(2, 2), heavy_hex(2, 3)}) {
        const std::string once = io::to_json(chip.graph()).dump();
        EXPECT_EQ(io::to_json(io::graph_from_json(io::parse(once))).dump(), once);
    }
}

TEST(ChipJson, RoundTripWithDefects) {
    const Chip chip = heavy_hex(3, 3).with_defects({{4, 17}, {{0, 1}}});
    const io::json j = io::to_json(chip);
    const Chip back = io::chip_from_json(io::parse(j.dump()));
    EXPECT_EQ(back.family(), Family::heavy_hex);
    EXPECT_EQ(back.lattice(), chip.lattice());
    EXPECT_EQ(back.graph(), chip.graph());
    EXPECT_EQ(back.gen_set(), chip.gen_set());
    EXPECT_EQ(back.group().generators(), chip.group().generators());
    EXPECT_EQ(io::to_json(back).dump(), j.dump());
}

TEST(ErrorMapJson, RoundTripIsExact) {
    const Chip chip = octagonal(2, 3);
    const ErrorMap e = gaussian_error_map(chip);
    const io::json j = io::to_json(e);
    EXPECT_TRUE(j["e2"].contains("0-1"));
    const ErrorMap back = io::error_map_from_json(io::parse(j.dump()));
    EXPECT_EQ(back.e1(), e.e1());
    EXPECT_EQ(back.e2(), e.e2());
    EXPECT_EQ(back.em(), e.em());
    EXPECT_EQ(back.support().edges(), e.support().edges());
}

TEST(ErrorMapJson, Validation) {
    EXPECT_NE(error_of([] {
                  (void)io::error_map_from_json(io::parse(R"({"e1":{"0":0.1,"2":0.1},"em":{"0":0,"1":0},"e2":{}})"));
              }).find("exactly 0..n-1"),
              std::string::npos);
    EXPECT_NE(error_of([] {
                  (void)io::error_map_from_json(io::parse(R"({"e1":{"0":0,"1":0},"em":{"0":0,"1":0},"e2":{"1-0":0.1}})"));
              }).find("u < v"),
              std::string::npos);
    EXPECT_NE(error_of([] {
                  (void)io::error_map_from_json(io::parse(R"({"e1":{"0":0,"1":0},"em":{"0":0,"1":0},"e2":{"0-1":"x"}})"));
              }).find("errors.e2[\"0-1\"]"),
              std::string::npos);
    EXPECT_THROW((void)io::error_map_from_json(io::parse(R"({"e1":{"0":1.5},"em":{"0":0},"e2":{}})")), invalid_input);
    EXPECT_THROW((void)io::error_map_from_json(io::parse(R"({"e1":{"0":0.1},"e2":{}})")), invalid_input);
}

TEST(CircuitJson, RoundTripAndPattern) {
    const Circuit c = deutsch_jozsa_circuit();
    const io::json j = io::to_json(c);
    EXPECT_EQ(io::circuit_from_json(io::parse(j.dump())), c);
    const PatternGraph p = io::pattern_from_json(j);
    EXPECT_EQ(p.graph.degree(4), 4U);
    const PatternGraph g = io::pattern_from_json(io::parse(R"({"n":2,"edges":[[0,1]]})"));
    EXPECT_EQ(g.order(), 2U);
    EXPECT_NE(error_of([] { (void)io::circuit_from_json(io::parse(R"({"num_qubits":2,"gates":[{"name":"cx"}]})")); })
                  .find("circuit.gates[0]: missing field 'qubits'"),
              std::string::npos);
}

TEST(MatchSetJson, SortedPairsAndRoundTrip) {
    const PatternGraph p = interaction_graph(Circuit(5, {{"cx", {4, 2}}, {"cx", {2, 3}}}));
    const MatchSet ms = sbsm_match(p, grid(3, 3));
    const std::string text = io::dump_match_set(ms);
    EXPECT_EQ(text.substr(0, 30), R"([{"map":[[2,0],[3,1],[4,3]]},{)");
    EXPECT_EQ(io::match_set_from_json(io::parse(text)), ms);
    EXPECT_EQ(io::dump_match_set(MatchSet({0})), "[]");
}

TEST(ResultJson, SortedByScore) {
    const Chip chip = grid(4, 4);
    const MappingResult r = sbcm(deutsch_jozsa_circuit(), chip, gaussian_error_map(chip));
    const io::json j = io::parse(io::dump_result(r));
    ASSERT_EQ(j["scores"].size(), r.mappings.size());
    EXPECT_EQ(j["best"]["score"].get<double>(), r.best_score());
    EXPECT_EQ(j["best"]["map"], j["scores"][0]["map"]);
    for (std::size_t k = 1; k < j["scores"].size(); ++k) {
        EXPECT_GE(j["scores"][k - 1]["score"].get<double>(), j["scores"][k]["score"].get<double>());
    }
}

TEST(Json, MalformedTextReportsPosition) {
    const std::string msg = error_of([] { (void)io::parse("{\"n\": 3,\n \"edges\": [[0,1],]}", "g.json"); });
    EXPECT_NE(msg.find("g.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    const std::string field = error_of([] { (void)io::graph_from_json(io::parse(R"({"n":"three","edges":[]})")); });
    EXPECT_NE(field.find("graph.n"), std::string::npos) << field;
}
