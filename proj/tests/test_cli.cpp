#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(QKMEANS_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    Result r;
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("qkm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("--help").status, 0);
    EXPECT_EQ(run("run --method nope").status, 1);
    EXPECT_EQ(run("run --method classical --dataset iris --k 1").status, 1);
    EXPECT_EQ(run("run --method classical --dataset csv --csv " + path("missing.csv")).status, 2);
    EXPECT_EQ(run("run --method destructive --dataset iris --k 3 --repeats 1").status, 0);
}

TEST_F(Cli, ReportIsDeterministic) {
    fs::create_directories(dir_ / "a");
    fs::create_directories(dir_ / "b");
    const std::string a = path("a/r.json"), b = path("b/r.json");
    const std::string args = " --method destructive --dataset random --k 3 --seed 5 --shots 200 --repeats 2";
    ASSERT_EQ(run("run" + args + " --out " + a).status, 0);
    ASSERT_EQ(run("run" + args + " --out " + b).status, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(path("a/r.points.csv")), slurp(path("b/r.points.csv")));
    EXPECT_FALSE(slurp(a).empty());
}

TEST_F(Cli, UnlabelledRunReportsAgreementOnly) {
    const Result r = run("run --method negative-rotations --dataset random --k 2 --seed 7 --repeats 3");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["dataset"]["labelled"].get<bool>());
    ASSERT_EQ(j["repeats"].size(), 3U);
    for (const auto& rep : j["repeats"]) {
        EXPECT_FALSE(rep.contains("accuracy"));
        EXPECT_DOUBLE_EQ(rep["agreement_vs_exact"].get<double>(), 1.0);
    }
    EXPECT_EQ(j["circuit_depth"], 2);
    EXPECT_FALSE(j.contains("outputs"));
}

TEST_F(Cli, LabelledRunWritesPoints) {
    const std::string out = path("iris.json");
    ASSERT_EQ(run("run --method destructive --dataset iris --k 3 --seed 7 --repeats 2 --out " + out).status, 0);
    const auto j = nlohmann::json::parse(slurp(out));
    for (const auto& rep : j["repeats"]) {
        const double acc = rep["accuracy"].get<double>();
        EXPECT_GT(acc, 1.0 / 3);
        EXPECT_LE(acc, 1.0);
        EXPECT_EQ(rep["label_mapping"].size(), 3U);
        EXPECT_EQ(rep["assignments"][0].size(), 150U);
    }
    const std::string points = slurp(dir_ / j["outputs"]["points_csv"].get<std::string>());
    std::istringstream lines(points);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "x,y,cluster,label");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 150);
}

TEST_F(Cli, CsvDatasetAndPca) {
    const std::string csv = path("t.csv");
    std::ofstream(csv) << "a,b,c,kind\n1,2,0.5,x\n3,4,0.1,y\n5,7,0.2,x\n2,2,0.9,y\n";
    const Result p = run("pca --csv " + csv + " --label-column kind");
    ASSERT_EQ(p.status, 0);
    EXPECT_EQ(p.out.substr(0, p.out.find('\n')), "f0,f1,label");
    EXPECT_EQ(run("pca --csv " + csv + " --label-column nope").status, 2);
    EXPECT_EQ(run("pca --csv " + csv + " --components 5").status, 1);

    const Result r = run("run --method classical --dataset csv --csv " + csv + " --label-column kind --features 0,1 --k 2 --repeats 1");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["dataset"]["rows"], 4);
    EXPECT_TRUE(j["dataset"]["labelled"].get<bool>());
}

TEST_F(Cli, DepthReportPasses) {
    const Result r = run("depth");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, CompareWritesTable) {
    const std::string prefix = path("cmp");
    ASSERT_EQ(run("compare --methods classical,destructive,negative-rotations --datasets iris,random --out " + prefix).status, 0);
    const std::string csv = slurp(prefix + ".csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,iris,random,depth");
    const auto j = nlohmann::json::parse(slurp(prefix + ".json"));
    EXPECT_EQ(j["rows"].size(), 3U);
}
