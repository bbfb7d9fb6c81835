#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(BYTESTORE_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    Run r{-1, {}};
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("bytestore_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_F(Cli, GenIngestQueryInspect) {
    ASSERT_EQ(run("gen -s 1.5 -d 8 -n 2000 --seed 4 -o " + path("v.csv")).code, 0);
    std::ifstream in(path("v.csv"));
    std::stringstream csv;
    csv << in.rdbuf();
    ASSERT_EQ(line_count(csv.str()), 2001u);

    const auto ingest = run("ingest --csv " + path("v.csv") + " --cost bytes -o " + path("v.byst") + " --report -");
    ASSERT_EQ(ingest.code, 0);
    EXPECT_NE(ingest.out.find("advisor"), std::string::npos);

    // count the rows below 3 straight from the CSV
    std::size_t expect = 0;
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) expect += std::stoll(line) < 3;

    const auto q = run("query --store " + path("v.byst") + " -w 'v < 3' --select v");
    ASSERT_EQ(q.code, 0);
    EXPECT_EQ(line_count(q.out), expect + 1);

    const auto inspect = run("inspect " + path("v.byst"));
    ASSERT_EQ(inspect.code, 0);
    const auto j = nlohmann::json::parse(inspect.out);
    EXPECT_EQ(j["n_rows"], 2000);
}

TEST_F(Cli, ForcedLayoutAndSchema) {
    std::ofstream(path("t.csv")) << "id,name\n1,ann\n2,bob\n3,ann\n";
    std::ofstream(path("s.json")) << R"({"columns":[{"name":"id","kind":"numeric","layout":"vbp"},{"name":"name","kind":"categorical"}]})";
    ASSERT_EQ(run("ingest --csv " + path("t.csv") + " --schema " + path("s.json") + " --layout bitpacked -o " +
                  path("t.byst"))
                  .code,
              0);
    const auto j = nlohmann::json::parse(run("inspect " + path("t.byst")).out);
    EXPECT_EQ(j["columns"][0]["layout"], "vbp");
    EXPECT_EQ(j["columns"][1]["layout"], "bitpacked");
    const auto q = run("query --store " + path("t.byst") + " -w \"name = 'ann'\" --select id");
    EXPECT_EQ(q.out, "id\n1\n3\n");
}

TEST_F(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("gen -s 1 -d 2 -n 10").code, 1);
    EXPECT_EQ(run("inspect " + path("missing.byst")).code, 1);
    std::ofstream(path("t.csv")) << "a\n1\n";
    ASSERT_EQ(run("ingest --csv " + path("t.csv") + " -o " + path("t.byst")).code, 0);
    EXPECT_EQ(run("query --store " + path("t.byst") + " -w 'a <'").code, 1);
    EXPECT_EQ(run("query --store " + path("t.byst") + " -w 'zz = 1'").code, 1);
    EXPECT_EQ(run("ingest --csv " + path("t.csv") + " --layout rows -o " + path("x.byst")).code, 1);
}

TEST_F(Cli, DataErrorsExitTwo) {
    std::ofstream(path("bad.csv")) << "a,b\n1,\n";
    EXPECT_EQ(run("ingest --csv " + path("bad.csv") + " -o " + path("x.byst")).code, 2);
    std::ofstream(path("junk.byst")) << "not a store";
    EXPECT_EQ(run("query --store " + path("junk.byst")).code, 2);
}

TEST_F(Cli, BenchWritesOneRowPerCell) {
    const auto r = run("bench --skews 0,1 --domain-bits 8 -n 5000 --selectivities 0.5 --layouts ppvbs,byteslice --reps 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(line_count(r.out), 1u + 2 * 2);
    EXPECT_EQ(r.out.rfind("layout,skew,d,n,target_sel,sel,", 0), 0u);
}
