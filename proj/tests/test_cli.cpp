#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(GLNLAB_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json parse(const CliRun& r) { return nlohmann::json::parse(r.out); }

std::string temp_file(const std::string& name, const std::string& text) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST(Cli, VerifyPasses) {
    const CliRun r = run("verify --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse(r)["verdict"], "pass");
}

TEST(Cli, TamperedVerifyFails) {
    const CliRun r = run("verify --seed 1 --tamper");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(parse(r)["verdict"], "fail");
}

TEST(Cli, SameSeedSameBytes) {
    const std::string args = "adaptive --m 2 --count 5 --seed 42";
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(run("adaptive --m 2 --count 5 --seed 43").out, a.out);
}

TEST(Cli, CsvHeader) {
    const CliRun r = run("bs --m 2 --input 0,1,2,3,0,1 --format csv --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "name,mode,pass,vacuous,values,bounds");
}

TEST(Cli, BlockCertificateForExampleWord) {
    const CliRun r = run("bs --m 2 --input 0,1,2,3,0,1 --seed 1");
    EXPECT_EQ(r.code, 0);
    const auto j = parse(r);
    EXPECT_EQ(j["checks"][0]["values"]["blocks"], 8);
    EXPECT_EQ(j["config"]["seed_source"], "flag");
}

TEST(Cli, FatParity) {
    const CliRun r = run("fat --n 2 --target parity2 --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse(r)["checks"][0]["values"]["value"], "1/2");
}

TEST(Cli, ConfigFileWithFlagOverride) {
    const std::string cfg = temp_file("glnlab_cfg.json", R"({"m": 2, "count": 3, "seed": 9})");
    const auto a = parse(run("adaptive --config " + cfg));
    EXPECT_EQ(a["config"]["count"], 3);
    EXPECT_EQ(a["config"]["seed"], 9);
    const auto b = parse(run("adaptive --config " + cfg + " --count 4"));
    EXPECT_EQ(b["config"]["count"], 4);
    EXPECT_EQ(b["config"]["seed"], 9);
}

TEST(Cli, UsageErrorsExitTwo) {
    const std::string cfg = temp_file("glnlab_bad.json", R"({"bogus": 1})");
    EXPECT_EQ(run("verify --config " + cfg).code, 2);
    EXPECT_EQ(run("verify --format xml").code, 2);
    EXPECT_EQ(run("nosuch").code, 2);
    EXPECT_EQ(run("bs --m 2 --input 0,1,x").code, 2);
}

TEST(Cli, StrategyFile) {
    const CliRun r = run("adaptive --m 2 --seed 1 --strategy " + std::string(GLNLAB_DATA) +
                      "/strategies/repeated_value.json");
    EXPECT_EQ(r.code, 0);
    const auto j = parse(r);
    bool found = false;
    for (const auto& c : j["checks"]) {
        if (c["name"] == "strategy") {
            EXPECT_EQ(c["values"]["bias"], "1/48");
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Cli, OutFileMatchesStdout) {
    const std::string path = ::testing::TempDir() + "glnlab_out.json";
    EXPECT_EQ(run("fat --n 2 --target parity2 --seed 1 --out " + path).code, 0);
    std::ifstream in(path);
    const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    // identical apart from the echoed "out" setting
    auto file = nlohmann::json::parse(written);
    auto plain = parse(run("fat --n 2 --target parity2 --seed 1"));
    EXPECT_EQ(file["config"]["out"], path);
    file["config"].erase("out");
    plain["config"].erase("out");
    EXPECT_EQ(file, plain);
}
