#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <rdepth/rdepth.hpp>

namespace fs = std::filesystem;
using namespace rdepth;

namespace {

struct Run {
    int code;
    std::string out;
};

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("rdepth_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(const std::string& args, const std::string& env = "") {
    const auto log = scratch() / "stdout.txt";
    const std::string cmd = env + " " + RDEPTH_CLI + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kFour = std::string(RDEPTH_DATA_DIR) + "/fourpoints.csv";

}  // namespace

TEST(Cli, DepthGoldenValues) {
    auto r = run("depth " + kFour + " --beta 0,0 --method def21");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("depth 0.5 "), std::string::npos) << r.out;
    r = run("depth " + kFour + " --beta 0,0 --method bh99");
    EXPECT_NE(r.out.find("count 1 "), std::string::npos) << r.out;
    r = run("depth " + kFour + " --beta 0,0 --method bh992");
    EXPECT_NE(r.out.find("count 1.5 "), std::string::npos) << r.out;
    r = run("depth " + kFour + " --beta 0,0 --method oracle --out " + (scratch() / "d").string());
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(slurp(scratch() / "d" / "depth.json"));
    EXPECT_EQ(j["results"]["normalized"], 0.5);
    for (const char* k : {"command", "version", "seed", "config", "results", "warnings"}) EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Cli, DepthErrors) {
    const auto bad = scratch() / "bad.csv";
    std::ofstream(bad) << "x1,y\n1,2\n3,oops\n";
    auto r = run("depth " + bad.string() + " --beta 0,0");
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.out.find(":3:"), std::string::npos) << r.out;
    r = run("depth " + kFour + " --beta 0,0,0");
    EXPECT_NE(r.code, 0);
    r = run("depth " + kFour + " --beta 0,0 --method nope");
    EXPECT_NE(r.code, 0);
    const auto ragged = scratch() / "ragged.csv";
    std::ofstream(ragged) << "x1,y\n1,2\n3\n";
    r = run("depth " + ragged.string() + " --beta 0,0");
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.out.find(":3:"), std::string::npos) << r.out;
}

TEST(Cli, FitMatchesLibrary) {
    const auto out = scratch() / "f";
    auto r = run("fit " + kFour + " --method exact --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(slurp(out / "fit.json"));
    const auto lib = fit_exact_p2(read_dataset(kFour));
    EXPECT_EQ(j["results"]["beta_hat"].get<std::vector<double>>(), lib.beta_hat.values());
    EXPECT_EQ(j["results"]["tie_set_size"].get<std::size_t>(), lib.tie_set_size);

    const auto line = scratch() / "line.csv";
    std::ofstream(line) << "x1,y\n0,1\n1,3\n2,5\n-1,-1\n";
    r = run("fit " + line.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("beta_hat (1, 2)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("depth 1 "), std::string::npos) << r.out;

    const auto same = scratch() / "same.csv";
    std::ofstream(same) << "x1,y\n1,1\n1,3\n";
    r = run("fit " + same.string());
    EXPECT_NE(r.code, 0);
}

TEST(Cli, SearchDominatedByExact) {
    const auto data = scratch() / "s.csv";
    write_dataset(data.string(), sample(BivariateNormalStd{}, 40, 3));
    const double exact = fit_exact_p2(read_dataset(data.string())).depth.normalized;
    for (int seed : {1, 2}) {
        const auto out = scratch() / ("search" + std::to_string(seed));
        const auto r = run("fit " + data.string() + " --method search --restarts 3 --seed " + std::to_string(seed) +
                           " --out " + out.string());
        ASSERT_EQ(r.code, 0);
        const auto j = nlohmann::json::parse(slurp(out / "fit.json"));
        EXPECT_LE(j["results"]["depth"]["normalized"].get<double>(), exact);
    }
}

TEST(Cli, PopdepthAndReplay) {
    const auto out = scratch() / "p";
    auto r = run("exp popdepth --model normal --beta 0,1 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    const auto first = slurp(out / "popdepth.json");
    const auto j = nlohmann::json::parse(first);
    EXPECT_NEAR(j["results"]["numeric"].get<double>(), 0.25, 1e-3);
    EXPECT_NEAR(j["results"]["closed_form"].get<double>(), 0.25, 1e-3);
    r = run("exp popdepth --model normal --beta 0,1 --out " + out.string());
    EXPECT_EQ(slurp(out / "popdepth.json"), first);
}

TEST(Cli, SampleRoundTrip) {
    const auto out = scratch() / "smp";
    auto r = run("exp sample --model disk --n 50 --seed 9 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    const auto set = read_dataset((out / "sample.csv").string());
    const auto lib = sample(UniformUnitDisk{}, 50, 9);
    for (std::size_t i = 0; i < set.size(); ++i) {
        EXPECT_EQ(set[i].x, lib[i].x);
        EXPECT_EQ(set[i].y, lib[i].y);
    }
    r = run("depth " + (out / "sample.csv").string() + " --beta 0.1,0.2 --out " + out.string());
    const auto j = nlohmann::json::parse(slurp(out / "depth.json"));
    EXPECT_EQ(j["results"]["normalized"].get<double>(), rd_normalized(lib, ParamVector{0.1, 0.2}).normalized);
}

TEST(Cli, ConsistencyOutputs) {
    const auto out = scratch() / "c";
    auto r = run("exp consistency --model normal --reps 30 --n-grid 50,100,200 --seed 4 --out " + out.string(),
                 "RDEPTH_THREADS=2");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("loglog_slope"), std::string::npos);
    const auto j = nlohmann::json::parse(slurp(out / "consistency.json"));
    EXPECT_TRUE(j["results"].contains("loglog_slope"));
    std::ifstream csv(out / "consistency.csv");
    std::string line;
    int rows = -1;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 3);
    const auto first = slurp(out / "consistency.json");
    r = run("exp consistency --model normal --reps 30 --n-grid 50,100,200 --seed 4 --out " + out.string(),
            "RDEPTH_THREADS=1");
    EXPECT_EQ(slurp(out / "consistency.json"), first);
}

TEST(Cli, LimitEmpiricalCompare) {
    const auto out = scratch() / "l";
    auto r = run("exp limit --model normal --draws 40 --v-grid 64 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    r = run("exp empirical --model normal --n 100 --reps 40 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    r = run("exp compare --a " + (out / "limit.csv").string() + " --b " + (out / "empirical.csv").string() +
            " --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("ks "), std::string::npos);
    const auto j = nlohmann::json::parse(slurp(out / "compare.json"));
    EXPECT_EQ(j["results"]["ks"].size(), 2u);
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(run("").code, 0);
    EXPECT_NE(run("exp popdepth --model nope --beta 0,0").code, 0);
    EXPECT_NE(run("exp consistency --n-grid 200,100 --reps 30 --out " + (scratch() / "u").string()).code, 0);
    EXPECT_NE(run("exp consistency --reps 5 --out " + (scratch() / "u").string()).code, 0);
    EXPECT_NE(run("depth " + kFour + " --beta 0,0", "RDEPTH_THREADS=abc").code, 0);
    EXPECT_EQ(run("--version").code, 0);
}
