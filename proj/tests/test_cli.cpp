#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

/// Runs the CLI with `args`, capturing stdout; stderr goes to `err_path` if given.
Outcome cli(const std::string& args, const std::string& err_path = "/dev/null") {
    std::string cmd = quote(LIELAB_BIN) + " " + args + " 2>" + quote(err_path);
    Outcome o;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return o;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, n);
    int status = pclose(p);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name, const std::string& text) {
    auto dir = fs::path(LIELAB_BINARY_DIR) / "cli_scratch";
    fs::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

/// The report with every elapsed_ms set to 0, in the CLI's own formatting.
std::string normalized(const std::string& report) {
    auto j = json::parse(report);
    for (auto& r : j["results"]) r["elapsed_ms"] = 0;
    return j.dump(2) + "\n";
}

const fs::path source_dir{LIELAB_SOURCE_DIR};

}  // namespace

TEST(Cli, T3ReportMatchesGolden) {
    auto golden = source_dir / "tests/golden/t3_analysis.json";
    // run from the source tree so the script path in the command is stable
    auto o = cli("run " + quote((source_dir / "scripts/t3_analysis.lie").string()));
    EXPECT_EQ(o.code, 1);  // the script contains checks that fail by design
    auto got = normalized(o.out);
    if (std::getenv("LIELAB_UPDATE_GOLDEN")) std::ofstream(golden, std::ios::binary) << got;
    EXPECT_EQ(got, slurp(golden));
}

TEST(Cli, EmptyScriptExitsZero) {
    auto o = cli("run " + quote(scratch("empty.lie", "").string()));
    EXPECT_EQ(o.code, 0);
    auto j = json::parse(o.out);
    EXPECT_EQ(j["results"], json::array());
    EXPECT_EQ(j["version"], 1);
    EXPECT_TRUE(j.contains("tool_version"));
}

TEST(Cli, ParseErrorsExitTwo) {
    auto err = fs::path(LIELAB_BINARY_DIR) / "cli_scratch" / "stderr.txt";
    auto o = cli("run " + quote(scratch("torsion.lie", "field F Fp 3\n").string()), err.string());
    EXPECT_EQ(o.code, 2);
    EXPECT_TRUE(o.out.empty());
    EXPECT_NE(slurp(err).find("TorsionError"), std::string::npos);
    o = cli("run " + quote(scratch("undeclared.lie", "field F Fp 5\ncheck snd M\n").string()), err.string());
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(slurp(err).find("UndeclaredName"), std::string::npos);
    EXPECT_NE(slurp(err).find("line 2"), std::string::npos);
    o = cli("run " + quote(scratch("syntax.lie", "field F Fp\n").string()), err.string());
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(slurp(err).find("ParseError"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("run /nonexistent/script.lie").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("fuzz qadann --dim-max 0").code, 2);
    EXPECT_EQ(cli("--version").code, 0);
}

TEST(Cli, StrictTurnsHypothesisFailuresIntoFailures) {
    auto p = scratch("control.lie", "field F Fp 5\nalgebra N over F = matrix 2\ninvolution on N = transpose\n"
                                    "check thm snd_prop N\n");
    EXPECT_EQ(cli("run " + quote(p.string())).code, 0);
    EXPECT_EQ(cli("run --strict " + quote(p.string())).code, 1);
    auto q = scratch("undecided.lie", "field R Q\nalgebra A over R = matrix 2\nalgebra L over R = minus A\ncheck snd L\n");
    EXPECT_EQ(cli("run " + quote(q.string())).code, 0);
    EXPECT_EQ(cli("run " + quote(q.string()) + " --strict").code, 1);
}

TEST(Cli, HoldingChecksExitZero) {
    auto p = scratch("holds.lie", "field F Fp 5\nalgebra M2 over F = matrix 2\nalgebra D over F = der M2\ncheck snd D\n");
    auto o = cli("run " + quote(p.string()));
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(json::parse(o.out)["results"][0]["verdict"], "holds");
}

TEST(Cli, BudgetOverrunIsRecordedNotFatal) {
    auto p = scratch("budget.lie", "field F Fp 5\nalgebra T over F = ut 3\nalgebra L over F = minus T\n"
                                   "check qann L L enumerate\ncheck center L\n");
    auto o = cli("run --budget 100 " + quote(p.string()));
    EXPECT_EQ(o.code, 1);
    auto j = json::parse(o.out);
    ASSERT_EQ(j["results"].size(), 2u);
    EXPECT_EQ(j["results"][0]["verdict"], "error");
    EXPECT_EQ(j["results"][1]["verdict"], "computed");
    EXPECT_EQ(j["budget"], 100);
}

TEST(Cli, JsonFlagWritesFile) {
    auto out = fs::path(LIELAB_BINARY_DIR) / "cli_scratch" / "report.json";
    fs::remove(out);
    auto o = cli("run " + quote((source_dir / "scripts/t3_analysis.lie").string()) + " --json " + quote(out.string()));
    EXPECT_EQ(o.code, 1);
    EXPECT_TRUE(o.out.empty());
    EXPECT_EQ(normalized(slurp(out)), slurp(source_dir / "tests/golden/t3_analysis.json"));
}

TEST(Cli, DeterministicAcrossRunsAndSeeds) {
    auto script = quote((source_dir / "scripts/matrix_chain.lie").string());
    auto a = cli("run --seed 7 " + script), b = cli("run --seed 7 " + script);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(normalized(a.out), normalized(b.out));
    auto c = cli("run " + script);
    auto ja = json::parse(a.out), jc = json::parse(c.out);
    ASSERT_EQ(ja["results"].size(), jc["results"].size());
    for (std::size_t i = 0; i < ja["results"].size(); ++i)
        EXPECT_EQ(ja["results"][i]["verdict"], jc["results"][i]["verdict"]);
}

TEST(Cli, FmtIsCanonicalAndIdempotent) {
    auto once = cli("fmt " + quote((source_dir / "scripts/t3_analysis.lie").string()));
    EXPECT_EQ(once.code, 0);
    EXPECT_EQ(once.out.find('#'), std::string::npos);
    auto p = scratch("formatted.lie", once.out);
    auto twice = cli("fmt " + quote(p.string()));
    EXPECT_EQ(twice.code, 0);
    EXPECT_EQ(twice.out, once.out);
    EXPECT_EQ(cli("fmt " + quote(scratch("bad.lie", "check snd X\n").string())).code, 2);
}

TEST(Cli, FuzzSmallSearch) {
    auto o = cli("fuzz qadann --dim-max 4 --field 5");
    EXPECT_EQ(o.code, 0);
    auto j = json::parse(o.out);
    EXPECT_EQ(j["failures"], 0);
    EXPECT_GE(j["instances"].size(), 3u);
    auto s = cli("fuzz qadann --dim-max 4 --field 5 --seed 9");
    EXPECT_EQ(json::parse(s.out)["instances"].size(), j["instances"].size());
    EXPECT_EQ(cli("fuzz qadann --field 3").code, 2);
    EXPECT_EQ(cli("fuzz qadann --field 9").code, 2);
}
