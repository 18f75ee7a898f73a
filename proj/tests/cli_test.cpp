#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "geoindex/cli.hpp"
#include "geoindex/config.hpp"

using namespace geoindex;

namespace {

const std::filesystem::path examples = GEOINDEX_EXAMPLES_DIR;

struct Outcome {
    int status = 0;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Outcome r;
    r.status = run_command(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string example(const std::string& name) { return (examples / name).string(); }
std::string golden(const std::string& name) { return read_text_file(examples / "golden" / name); }

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::path(::testing::TempDir()) / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

}  // namespace

TEST(CliGolden, Betti) {
    const Outcome r = run({"betti", "--n", "3", "--qmax", "8"});
    EXPECT_EQ(r.status, exit_pass);
    EXPECT_EQ(r.out, golden("betti-n3-q8.tsv"));
}

TEST(CliGolden, IdentityCheck) {
    Outcome r = run({"identity-check", "--config", example("s2-pair.json")});
    EXPECT_EQ(r.status, exit_pass);
    EXPECT_EQ(r.out, golden("identity-check-s2-pair.tsv"));
    r = run({"--format", "json", "identity-check", "--config", example("s2-pair.json")});
    EXPECT_EQ(r.out, golden("identity-check-s2-pair.json"));
    r = run({"identity-check", "--format", "json", "--config", example("s2-pair")});
    EXPECT_EQ(r.out, golden("identity-check-s2-pair.json"));
}

TEST(CliGolden, IndexTableAndMorse) {
    Outcome r = run({"index-table", "--config", example("s2-single.json"), "--m-max", "11"});
    EXPECT_EQ(r.status, exit_pass);
    EXPECT_EQ(r.out, golden("index-table-s2-single.tsv"));
    r = run({"verify-morse", "--config", example("s2-pair.json"), "--window", "1:3"});
    EXPECT_EQ(r.status, exit_pass);
    EXPECT_EQ(r.out, golden("verify-morse-s2-pair.tsv"));
}

TEST(CliGolden, JumpCommands) {
    Outcome r = run({"jump-search", "--config", example("s2-single.json"), "--eps", "1/100", "--delta", "1/10"});
    EXPECT_EQ(r.status, exit_pass);
    EXPECT_EQ(r.out, golden("jump-search-s2-single.tsv"));
    r = run({"jump-search", "--config", example("s2-pair.json"), "--eps", "1/100", "--delta", "1/10"});
    EXPECT_EQ(r.out, golden("jump-search-s2-pair.tsv"));
    r = run({"verify-jump", "--config", example("s2-pair.json"), "--cert", example("s2-pair.cert.json")});
    EXPECT_EQ(r.status, exit_pass);
    EXPECT_EQ(r.out, golden("verify-jump-s2-pair.tsv"));
    r = run({"replay-proof", "--config", example("s2-pair.json"), "--cert", example("s2-pair.cert.json")});
    EXPECT_EQ(r.status, exit_failure);
    EXPECT_EQ(r.out, golden("replay-proof-s2-pair.tsv"));
}

TEST(Cli, JumpSearchWritesACertificate) {
    const auto path = scratch("pair.cert.json");
    const Outcome r = run({"jump-search", "--config", example("s2-pair.json"), "--eps", "1/100", "--delta", "1/10", "--out",
                       path.string()});
    EXPECT_EQ(r.status, exit_pass);
    EXPECT_EQ(read_text_file(path), read_text_file(examples / "s2-pair.cert.json"));
}

TEST(Cli, WorkerCountDoesNotChangeTheResult) {
    const std::vector<std::string> args = {"jump-search", "--config", example("s2-pair.json"), "--eps", "1/100",
                                           "--delta", "1/10"};
    ::setenv("GEOINDEX_WORKERS", "1", 1);
    const Outcome one = run(args);
    ::setenv("GEOINDEX_WORKERS", "6", 1);
    const Outcome six = run(args);
    ::setenv("GEOINDEX_WORKERS", "zero", 1);
    const Outcome bad = run(args);
    ::unsetenv("GEOINDEX_WORKERS");
    EXPECT_EQ(one.out, six.out);
    EXPECT_EQ(bad.status, exit_input);
}

TEST(Cli, ExitStatuses) {
    EXPECT_EQ(run({}).status, exit_input);
    EXPECT_EQ(run({"betti", "--n", "1", "--qmax", "3"}).status, exit_input);
    EXPECT_EQ(run({"validate", "--config", example("missing.json")}).status, exit_input);
    EXPECT_EQ(run({"validate", "--config", example("s2-pair.json")}).status, exit_pass);
    EXPECT_EQ(run({"identity-check", "--config", example("s2-single.json")}).status, exit_failure);
    EXPECT_EQ(run({"verify-morse", "--config", example("s2-pair.json"), "--window", "0:10", "--m-max", "2"}).status,
              exit_input);
    // the pair breaks the alternating inequality in degree 4
    EXPECT_EQ(run({"verify-morse", "--config", example("s2-pair.json"), "--window", "0:6"}).status, exit_failure);
    EXPECT_EQ(run({"jump-search", "--config", example("s2-pair.json"), "--eps", "1/100", "--delta", "1/10", "--max-N",
                   "20"})
                  .status,
              exit_failure);
    EXPECT_EQ(run({"replay-proof", "--config", example("s2-hyperbolic.json"), "--cert", example("s2-pair.cert.json")})
                  .status,
              exit_input);  // labels do not match
}

TEST(Cli, NotFoundPrintsTheNearMiss) {
    const Outcome r = run({"jump-search", "--config", example("s2-pair.json"), "--eps", "1/100", "--delta", "1/10",
                       "--max-N", "20"});
    EXPECT_EQ(r.status, exit_failure);
    EXPECT_NE(r.err.find("closest candidate"), std::string::npos) << r.err;
}

TEST(Cli, InvalidCertificateIsAFailure) {
    const auto path = scratch("broken.cert.json");
    std::string text = read_text_file(examples / "s2-pair.cert.json");
    text.replace(text.find("25"), 2, "24");
    write_file(path, text);
    const Outcome r = run({"verify-jump", "--config", example("s2-pair.json"), "--cert", path.string()});
    EXPECT_EQ(r.status, exit_failure);
    EXPECT_NE(r.err.find("iterate m"), std::string::npos) << r.err;
}

TEST(Cli, PrecisionErrorExitsWithThree) {
    const auto path = scratch("coarse.json");
    write_file(path, R"({"version": 1, "n": 2, "bumpy": false, "geodesics": [{"label": "A", "initial_index": 1,
        "descriptor": {"thetas": [{"decimal": "0.6", "err": "1e-13", "irrational": false}]}}]})");
    EXPECT_EQ(run({"index-table", "--config", path.string(), "--m-max", "4"}).status, exit_pass);
    const Outcome r = run({"index-table", "--config", path.string(), "--m-max", "5"});
    EXPECT_EQ(r.status, exit_precision);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, InputErrorsNameTheLine) {
    const auto path = scratch("unknown-key.json");
    write_file(path, "{\n  \"version\": 1,\n  \"n\": 2,\n  \"geodesics\": [],\n  \"colour\": 1\n}\n");
    const Outcome r = run({"validate", "--config", path.string()});
    EXPECT_EQ(r.status, exit_input);
    EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
}

TEST(Cli, ConfigFormatIsTheFallback) {
    const auto path = scratch("json-output.json");
    std::string text = read_text_file(examples / "s2-pair.json");
    text.replace(text.rfind('}'), 1, ",\n  \"output\": {\"format\": \"json\"}\n}");
    write_file(path, text);
    Outcome r = run({"identity-check", "--config", path.string()});
    EXPECT_EQ(r.out, golden("identity-check-s2-pair.json"));
    r = run({"--format", "tsv", "identity-check", "--config", path.string()});
    EXPECT_EQ(r.out, golden("identity-check-s2-pair.tsv"));
}
