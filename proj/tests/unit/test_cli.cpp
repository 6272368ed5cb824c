#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "gprox/cli.hpp"

namespace {

const std::string kFixtures = GPROX_FIXTURES;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = gprox::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

} // namespace

TEST(Cli, ValidateExitCodes)
{
    auto ok = run({"validate", fixture("interval_demo.txt")});
    EXPECT_EQ(ok.code, gprox::cli::kExitOk);
    EXPECT_TRUE(has(ok.out, "command: gprox validate"));
    EXPECT_TRUE(has(ok.out, "exit_status: 0"));

    auto broken = run({"validate", fixture("broken_symmetry.txt")});
    EXPECT_EQ(broken.code, gprox::cli::kExitNegative);
    EXPECT_TRUE(has(broken.out, "0 1")) << broken.out;

    auto missing = run({"validate", fixture("nope.txt")});
    EXPECT_EQ(missing.code, gprox::cli::kExitUsage);

    auto truncated = run({"validate", fixture("truncated.txt")});
    EXPECT_EQ(truncated.code, gprox::cli::kExitUsage);
    EXPECT_TRUE(has(truncated.err + truncated.out, "line 10"));
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, gprox::cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, gprox::cli::kExitUsage);
    EXPECT_EQ(run({"demo", "circle"}).code, gprox::cli::kExitUsage);
    // Coordinate instances take coordinates, not indices.
    EXPECT_EQ(run({"solve", fixture("interval_demo.txt"), "--start=-3"}).code, gprox::cli::kExitOk);
    EXPECT_EQ(run({"solve", fixture("interval_demo.txt"), "--start", "0"}).code, gprox::cli::kExitUsage);
    EXPECT_EQ(run({"solve", fixture("interval_demo.txt"), "--start", "0.3"}).code, gprox::cli::kExitUsage);
    EXPECT_EQ(run({"solve", fixture("interval_demo.txt"), "--epsilon", "0"}).code, gprox::cli::kExitUsage);
    EXPECT_EQ(run({"--help"}).code, gprox::cli::kExitOk);
}

TEST(Cli, ClassifyReportsNotContractiveAndNonexpansive)
{
    auto expanding = run({"classify", fixture("expanding.txt")});
    EXPECT_TRUE(has(expanding.out, "NotContractive")) << expanding.out;

    auto identity = run({"classify", fixture("identity_overlap.txt")});
    EXPECT_EQ(identity.code, gprox::cli::kExitOk);
    EXPECT_TRUE(has(identity.out, "nonexpansive: yes")) << identity.out;
}

TEST(Cli, SolveSegmentsParallelStopsImmediately)
{
    auto r = run({"solve", fixture("segments_demo.txt"), "--mode", "parallel", "--start", "0,0", "--partner", "1,1",
                  "--epsilon", "0.01"});
    EXPECT_EQ(r.code, gprox::cli::kExitOk) << r.out << r.err;
    EXPECT_TRUE(has(r.out, "status: found"));
    EXPECT_TRUE(has(r.out, "iterations: 0"));
}

TEST(Cli, EnumerateIntervalAtZero)
{
    auto r = run({"enumerate", fixture("interval_demo.txt"), "--epsilon", "0"});
    EXPECT_EQ(r.code, gprox::cli::kExitOk);
    EXPECT_TRUE(has(r.out, "size: 2"));
    EXPECT_TRUE(has(r.out, "member: (-1)"));
    EXPECT_TRUE(has(r.out, "member: (1)"));
    EXPECT_TRUE(has(r.out, "diameter: 2"));
}

TEST(Cli, EnumerateRequireNonempty)
{
    auto r = run({"enumerate", fixture("interval_demo.txt"), "--epsilon", "0", "--mode", "strict"});
    EXPECT_EQ(r.code, gprox::cli::kExitOk);
    auto empty = run({"enumerate", fixture("identity_overlap.txt"), "--epsilon", "0", "--require-nonempty"});
    EXPECT_EQ(empty.code, gprox::cli::kExitOk);
}

TEST(Cli, BoundSubcommand)
{
    auto r = run({"bound", "contraction", "--alpha", "0.5", "--epsilon", "0.3", "--dab", "2"});
    EXPECT_EQ(r.code, gprox::cli::kExitOk);
    EXPECT_TRUE(has(r.out, "9.2")) << r.out;
    EXPECT_EQ(run({"bound", "contraction", "--alpha", "1", "--epsilon", "0.3", "--dab", "2"}).code,
              gprox::cli::kExitUsage);
}

TEST(Cli, GenerateWritesALoadableInstance)
{
    auto r = run({"generate", "--seed", "5", "--graph", "random", "--edge-probability", "0.3"});
    EXPECT_EQ(r.code, gprox::cli::kExitOk);
    EXPECT_EQ(r.out.rfind("gprox-instance: 1", 0), 0u);
    EXPECT_EQ(r.out, run({"generate", "--seed", "5", "--graph", "random", "--edge-probability", "0.3"}).out);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns)
{
    const std::vector<std::vector<std::string>> commands = {
        {"validate", fixture("three_point.txt")},
        {"classify", fixture("sparse_graph.txt")},
        {"solve", fixture("three_point.txt"), "--start", "0"},
        {"enumerate", fixture("segments_demo.txt"), "--epsilon", "0.01"},
        {"demo", "segments"},
    };
    for (const auto& c : commands) {
        const auto a = run(c);
        const auto b = run(c);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
        EXPECT_FALSE(has(a.out, "elapsed_ms"));
    }
}

TEST(Cli, TimingIsOptIn)
{
    auto r = run({"--timing", "validate", fixture("three_point.txt")});
    EXPECT_TRUE(has(r.out, "elapsed_ms"));
}
