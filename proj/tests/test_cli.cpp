#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace symmap;
namespace fs = std::filesystem;

namespace {

const std::string fixtures = SYMMAP_FIXTURES;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("symmap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
    std::string fixture(const std::string& name) const { return fixtures + "/" + name; }

    int run(const std::string& args) const {
        const std::string cmd = std::string(SYMMAP_CLI) + " " + args + " >" + tmp("stdout") + " 2>" + tmp("stderr");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string slurp(const std::string& name) const {
        std::ifstream in(tmp(name));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateAndRemap) {
    ASSERT_EQ(run("gen-topology grid 7 7 -o " + tmp("chip.json")), 0) << slurp("stderr");
    ASSERT_EQ(run("gen-errors " + tmp("chip.json") + " -o " + tmp("err.json")), 0) << slurp("stderr");
    ASSERT_EQ(run("remap " + fixture("dj5.json") + " " + tmp("chip.json") + " " + tmp("err.json") + " -o " +
                  tmp("res.json")),
              0)
        << slurp("stderr");
    const auto res = io::read_file(tmp("res.json"));
    const Chip chip = grid(7, 7);
    const MappingResult expect = sbcm(deutsch_jozsa_circuit(), chip, gaussian_error_map(chip));
    EXPECT_EQ(res["best"]["score"].get<double>(), expect.best_score());
    EXPECT_EQ(res["scores"].size(), expect.mappings.size());
}

TEST_F(Cli, MatchAlgorithmsAgree) {
    ASSERT_EQ(run("gen-topology octagonal 3 3 -o " + tmp("chip.json")), 0);
    ASSERT_EQ(run("match " + fixture("c4.json") + " " + tmp("chip.json") + " --algo vf2 -o " + tmp("a.json")), 0);
    ASSERT_EQ(run("match " + fixture("c4.json") + " " + tmp("chip.json") + " --algo sbsm --threads 3 -o " +
                  tmp("b.json")),
              0);
    EXPECT_EQ(slurp("a.json"), slurp("b.json"));
    EXPECT_EQ(io::read_file(tmp("a.json")).size(), 96U);
}

TEST_F(Cli, EmptyMatchSetIsSuccess) {
    ASSERT_EQ(run("gen-topology grid 5 5 -o " + tmp("chip.json")), 0);
    EXPECT_EQ(run("match " + fixture("tri.json") + " " + tmp("chip.json")), 0);
    EXPECT_EQ(slurp("stdout"), "[]\n");
}

TEST_F(Cli, ScoreLoopAndVectorAgree) {
    ASSERT_EQ(run("gen-topology heavy_hex 3 3 -o " + tmp("chip.json")), 0);
    ASSERT_EQ(run("gen-errors " + tmp("chip.json") + " --sigma 3 --center 4 2 -o " + tmp("err.json")), 0);
    ASSERT_EQ(run("match " + fixture("dj5_line.json") + " " + tmp("chip.json") + " -o " + tmp("m.json")), 0);
    const std::string args = tmp("m.json") + " " + fixture("dj5_line.json") + " " + tmp("err.json");
    ASSERT_EQ(run("score " + args + " --algo loop -o " + tmp("a.json")), 0);
    ASSERT_EQ(run("score " + args + " --algo vec --threads 4 -o " + tmp("b.json")), 0);
    const auto a = io::read_file(tmp("a.json"));
    const auto b = io::read_file(tmp("b.json"));
    ASSERT_EQ(a.size(), b.size());
    ASSERT_GT(a.size(), 0U);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i]["map"], b[i]["map"]);
        EXPECT_NEAR(a[i]["score"].get<double>(), b[i]["score"].get<double>(), 1e-12 * a[i]["score"].get<double>());
    }
}

TEST_F(Cli, DefectsFile) {
    {
        std::ofstream(tmp("d.json")) << R"({"vertices":[0],"edges":[[1,2]]})";
    }
    ASSERT_EQ(run("gen-topology grid 3 3 --defects " + tmp("d.json") + " -o " + tmp("chip.json")), 0)
        << slurp("stderr");
    const Chip chip = io::chip_from_json(io::read_file(tmp("chip.json")));
    EXPECT_EQ(chip.order(), 8U);
    EXPECT_EQ(chip.graph().size(), 12U - 2U - 1U);
}

TEST_F(Cli, DoesNotFitExitsThree) {
    ASSERT_EQ(run("gen-topology heavy_hex 3 3 -o " + tmp("chip.json")), 0);
    ASSERT_EQ(run("gen-errors " + tmp("chip.json") + " -o " + tmp("err.json")), 0);
    EXPECT_EQ(run("remap " + fixture("star4.json") + " " + tmp("chip.json") + " " + tmp("err.json")), 3);
    EXPECT_FALSE(slurp("stderr").empty());
}

TEST_F(Cli, BadDataExitsTwo) {
    {
        std::ofstream(tmp("bad.json")) << "{\"n\": 3, \"edges\": [[0,1],]}";
    }
    ASSERT_EQ(run("gen-topology grid 4 4 -o " + tmp("chip.json")), 0);
    EXPECT_EQ(run("match " + tmp("bad.json") + " " + tmp("chip.json")), 2);
    EXPECT_NE(slurp("stderr").find("bad.json"), std::string::npos);
    EXPECT_EQ(run("match " + tmp("missing.json") + " " + tmp("chip.json")), 2);
    // Error map for a different chip.
    ASSERT_EQ(run("gen-topology grid 5 5 -o " + tmp("other.json")), 0);
    ASSERT_EQ(run("gen-errors " + tmp("other.json") + " -o " + tmp("err.json")), 0);
    EXPECT_EQ(run("remap " + fixture("dj5.json") + " " + tmp("chip.json") + " " + tmp("err.json")), 2);
}

TEST_F(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("gen-topology ring 3 3"), 1);
    EXPECT_EQ(run("match a.json"), 1);
    EXPECT_EQ(run("match a.json b.json --algo bogus"), 1);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, BenchSmoke) {
    {
        std::ofstream(tmp("suite.json")) << R"({"families":["grid","octagonal"],"sizes":[[3,3],[4,4]],"patterns":[")"
                                         << fixture("p5.json") << R"("],"reps":1})";
    }
    ASSERT_EQ(run("bench " + tmp("suite.json") + " -o " + tmp("out.csv") + " --svg " + tmp("out.svg") + " -q"), 0)
        << slurp("stderr");
    std::ifstream in(tmp("out.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, bench::csv_header);
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 2U * 2U * 6U);
    EXPECT_NE(slurp("out.svg").find("<svg"), std::string::npos);
}
