#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "d2dshare/problem.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("D2DSHARE_CLI");
    REQUIRE_MESSAGE(p != nullptr, "D2DSHARE_CLI must point at the binary");
    return p;
}

int run_cli(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("d2dshare_cli_") + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string kTinyOverrides =
    " --set num_cues=6 --set num_d2d_links=3 --set rb_pool_sizes=[3,3]"
    " --set cue_split=[0.5,0.5] --set l_max=2 --set r_th_bps=0 --set gamma_th_db=-20";

}  // namespace

TEST_CASE("run writes csv outputs and a manifest") {
    TempDir dir("run");
    int rc = run_cli("run --experiment trial --trials 3 --seed 7" + kTinyOverrides +
                     " --out-dir " + dir.path.string());
    CHECK(rc == 0);
    CHECK(fs::exists(dir.path / "trial_log.csv"));
    CHECK(fs::exists(dir.path / "sweep.csv"));
    CHECK(fs::exists(dir.path / "sinr_samples.csv"));
    CHECK(fs::exists(dir.path / "manifest.json"));
    std::string manifest = slurp(dir.path / "manifest.json");
    CHECK(manifest.find("\"seed\": 7") != std::string::npos);
    CHECK(manifest.find("d2dshare") != std::string::npos);
    std::string sweep = slurp(dir.path / "sweep.csv");
    CHECK(sweep.rfind("axis,axis_value,method,", 0) == 0);
}

TEST_CASE("re-running with the same seed reproduces csv bytes") {
    TempDir a("rerun_a"), b("rerun_b");
    std::string args = "run --experiment trial --trials 4 --seed 11" + kTinyOverrides;
    REQUIRE(run_cli(args + " --out-dir " + a.path.string()) == 0);
    REQUIRE(run_cli(args + " --out-dir " + b.path.string()) == 0);
    for (const char* f : {"trial_log.csv", "sweep.csv", "sinr_samples.csv"})
        CHECK(slurp(a.path / f) == slurp(b.path / f));
}

TEST_CASE("usage and config errors exit with status 2") {
    TempDir dir("err");
    CHECK(run_cli("run --experiment bogus --trials 1 --out-dir " + dir.path.string()) == 2);
    CHECK(run_cli("run --experiment trial --set no_such_key=1 --out-dir " +
                  dir.path.string()) == 2);
    CHECK(run_cli("") == 2);
    fs::path bad_cfg = dir.path / "bad.json";
    std::ofstream(bad_cfg) << "{ nope";
    CHECK(run_cli("run --experiment trial --config " + bad_cfg.string() + " --out-dir " +
                  dir.path.string()) == 2);
}

TEST_CASE("plot renders svg from both csv schemas") {
    TempDir dir("plot");
    REQUIRE(run_cli("run --experiment trial --trials 3 --seed 3" + kTinyOverrides +
                    " --out-dir " + dir.path.string()) == 0);
    fs::path svg1 = dir.path / "sweep.svg";
    fs::path svg2 = dir.path / "sinr.svg";
    CHECK(run_cli("plot " + (dir.path / "sweep.csv").string() + " --out " + svg1.string()) == 0);
    CHECK(run_cli("plot " + (dir.path / "sinr_samples.csv").string() + " --out " +
                  svg2.string()) == 0);
    CHECK(slurp(svg1).find("<svg") != std::string::npos);
    CHECK(slurp(svg2).find("<svg") != std::string::npos);
    CHECK(run_cli("plot no_such.csv --out " + (dir.path / "x.svg").string()) == 1);
}

TEST_CASE("verify cross-checks a serialized instance") {
    TempDir dir("verify");
    d2dshare::AllocationProblem p;
    p.links = {0, 1};
    p.rbs = {0, 1};
    p.l_max = 1;
    p.r_th = 0.0;
    p.rate = {{5.0, 1.0}, {1.0, 4.0}};
    fs::path inst = dir.path / "instance.txt";
    {
        std::ofstream out(inst);
        d2dshare::save_problem(p, out);
    }
    std::string cmd = cli_path() + " verify " + inst.string() + " > " +
                      (dir.path / "verify.out").string() + " 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::string out = slurp(dir.path / "verify.out");
    CHECK(out.find("solve_exact") != std::string::npos);
    CHECK(out.find("oracle match: yes") != std::string::npos);
    CHECK(run_cli("verify no_such_instance.txt") == 1);
}
