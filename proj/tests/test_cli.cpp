#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

#include "helpers.hpp"

using namespace nounclass;
using testing_support::TempDir;
using testing_support::slurp;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string output;
};

/// Run the CLI through the shell with stderr folded into stdout.
Result run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" NOUNCLASS_CLI_PATH "' " + args + " 2>&1";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

/// Synthetic inputs generated through the CLI itself.
struct CliInputs {
    TempDir dir;
    explicit CliInputs(const std::string& preset = "default", const std::string& extra = "--stems 300") {
        auto r = run("synth --preset " + preset + " --out " + q(dir.path()) + " " + extra);
        EXPECT_EQ(r.code, 0) << r.output;
    }
    std::string inputs() const {
        return "--corpus " + q(dir / "corpus.txt") + " --source " + q(dir / "source.embjsonl") + " --target " +
               q(dir / "target.embjsonl");
    }
};

}

TEST(Cli, HelpExitsZero) {
    auto r = run("transfer --help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.output.find("--thresh"), std::string::npos);
    EXPECT_NE(r.output.find("--exclude-self"), std::string::npos);
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("--version").code, 0);
}

TEST(Cli, UnknownFlagIsUsageError) {
    auto r = run("transfer --no-such-flag");
    EXPECT_EQ(r.code, 1) << r.output;
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("cluster --target x --reduction tsne").code, 1);
}

TEST(Cli, MissingInputIsIoErrorNamingPath) {
    TempDir ws;
    auto r = run("extract -w " + q(ws.path()) + " --corpus /no/such/corpus.txt");
    EXPECT_EQ(r.code, 2) << r.output;
    EXPECT_NE(r.output.find("/no/such/corpus.txt"), std::string::npos) << r.output;
}

TEST(Cli, MalformedInputIsValidationError) {
    TempDir ws;
    io::write_file(ws / "bad.embjsonl", "{\"dim\":2,\"lang\":\"x\"}\n{\"word\":\"a\",\"vector\":[1]}\n");
    auto r = run("cluster -w " + q(ws.path()) + " --target " + q(ws / "bad.embjsonl"));
    EXPECT_EQ(r.code, 1) << r.output;
    EXPECT_NE(r.output.find("dimension mismatch"), std::string::npos) << r.output;
}

TEST(Cli, WorkspaceFromEnvironment) {
    TempDir ws;
    io::write_file(ws / "c.txt", "watu watu maji maji.\n");
    auto r = run("extract --corpus " + q(ws / "c.txt"), "NOUNCLASS_WORKSPACE=" + q(ws.path()));
    ASSERT_EQ(r.code, 0) << r.output;
    auto art = pipeline::read_artifact(ws / pipeline::files::candidates);
    EXPECT_EQ(art.records.size(), 2u);
}

TEST(Cli, ConfigFileValuesYieldToCommandLine) {
    CliInputs in;
    TempDir a, b;
    io::write_file(a / "run.toml", "[cluster]\nclusters = 3\nseed = 9\n");
    auto r1 = run("--config " + q(a / "run.toml") + " cluster -w " + q(a.path()) + " --target " + q(in.dir / "target.embjsonl"));
    ASSERT_EQ(r1.code, 0) << r1.output;
    auto m1 = pipeline::read_artifact(a / pipeline::files::clusters).meta;
    EXPECT_EQ(m1["flags"]["clusters"], 3);
    EXPECT_EQ(m1["flags"]["seed"], 9);

    auto r2 = run("--config " + q(a / "run.toml") + " cluster -w " + q(b.path()) + " --target " +
                  q(in.dir / "target.embjsonl") + " --clusters 4");
    ASSERT_EQ(r2.code, 0) << r2.output;
    auto m2 = pipeline::read_artifact(b / pipeline::files::clusters).meta;
    EXPECT_EQ(m2["flags"]["clusters"], 4);
    EXPECT_EQ(m2["flags"]["seed"], 9);
}

TEST(Cli, SynthManifestRecordsOverlap) {
    TempDir out;
    auto r = run("synth --preset overlap60 --out " + q(out.path()) + " --stems 600");
    ASSERT_EQ(r.code, 0) << r.output;
    auto m = io::json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(m["manifest"]["spec"]["cognate_overlap"], 0.6);
    EXPECT_EQ(m["manifest"]["target_words"].get<std::size_t>(), load_embeddings(out / "target.embjsonl").records.size());
}

TEST(Cli, FullPipelineProducesWorkspaceTree) {
    CliInputs in;
    TempDir ws;
    auto r = run("pipeline -w " + q(ws.path()) + " " + in.inputs() + " --gold " + q(in.dir / "gold.jsonl"));
    ASSERT_EQ(r.code, 0) << r.output;
    for (const char* f : {pipeline::files::candidates, pipeline::files::transfer, pipeline::files::clusters,
                          pipeline::files::profiles, pipeline::files::clustering, pipeline::files::innovations,
                          pipeline::files::ensemble, pipeline::files::rejected, pipeline::files::summary,
                          pipeline::files::report, pipeline::files::plot}) {
        EXPECT_TRUE(fs::exists(ws / f)) << f;
    }
    auto summary = io::json::parse(slurp(ws / pipeline::files::summary));
    EXPECT_TRUE(summary["summary"].contains("label_accuracy"));
    EXPECT_NE(slurp(ws / pipeline::files::report).find("Published reference values"), std::string::npos);
}

TEST(Cli, StagesAgreementAndBaselines) {
    CliInputs in;
    TempDir ws;
    const auto w = "-w " + q(ws.path());
    ASSERT_EQ(run("extract " + w + " --corpus " + q(in.dir / "corpus.txt")).code, 0);
    ASSERT_EQ(run("transfer " + w + " --source " + q(in.dir / "source.embjsonl") + " --target " + q(in.dir / "target.embjsonl")).code, 0);
    ASSERT_EQ(run("cluster " + w + " --target " + q(in.dir / "target.embjsonl")).code, 0);
    ASSERT_EQ(run("map " + w + " --source " + q(in.dir / "source.embjsonl")).code, 0);
    ASSERT_EQ(run("ensemble " + w + " --require-multi").code, 0);
    ASSERT_EQ(run("report " + w + " --no-plot").code, 0);
    EXPECT_FALSE(fs::exists(ws / pipeline::files::plot));

    auto agree = run("agreement " + w);
    ASSERT_EQ(agree.code, 0) << agree.output;
    EXPECT_NE(agree.output.find("shared"), std::string::npos) << agree.output;

    auto base = run("baseline " + w + " --source " + q(in.dir / "source.embjsonl"));
    ASSERT_EQ(base.code, 0) << base.output;
    auto freq = io::load_predictions(ws / "baseline_frequency.jsonl");
    ASSERT_FALSE(freq.empty());
    for (const auto& p : freq) EXPECT_EQ(p.noun_class, freq.front().noun_class);
    EXPECT_TRUE(fs::exists(ws / "baseline_random.jsonl"));
}

TEST(Cli, MapWithoutReferenceIsValidationError) {
    CliInputs in;
    TempDir ws;
    ASSERT_EQ(run("cluster -w " + q(ws.path()) + " --target " + q(in.dir / "target.embjsonl")).code, 0);
    auto r = run("map -w " + q(ws.path()));
    EXPECT_EQ(r.code, 1) << r.output;
    EXPECT_NE(r.output.find("--reference-inventory"), std::string::npos) << r.output;
}
