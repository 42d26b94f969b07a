#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(FAVARDLAB_BIN) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_config(const fs::path& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

}  // namespace

TEST(Cli, ExponentLedgerSucceeds) {
    fs::path dir = fresh_dir("favard_cli_ledger");
    EXPECT_EQ(run_cli("exponent-ledger --out " + dir.string()), 0);
    std::string csv = slurp(dir / "exponent_ledger.csv");
    EXPECT_NE(csv.find("M,alpha_min"), std::string::npos);
    EXPECT_NE(csv.find("\n5,"), std::string::npos);  // M = 5 row
    fs::remove_all(dir);
}

TEST(Cli, UnknownConfigKeyExitsFour) {
    fs::path dir = fresh_dir("favard_cli_badcfg");
    write_config(dir / "bad.cfg", "not_a_key = 1\n");
    EXPECT_EQ(run_cli("favard-sweep --config " + (dir / "bad.cfg").string()), 4);
    fs::remove_all(dir);
}

TEST(Cli, GenerationCapExitsThree) {
    fs::path dir = fresh_dir("favard_cli_cap");
    write_config(dir / "cap.cfg",
                 "n_max = 6\ngeneration_cap = 4\ntheta_samples = 16\nout_dir = " + dir.string() +
                     "\n");
    EXPECT_EQ(run_cli("favard-sweep --config " + (dir / "cap.cfg").string()), 3);
    fs::remove_all(dir);
}

TEST(Cli, SweepThenDecayFit) {
    fs::path dir = fresh_dir("favard_cli_sweep");
    write_config(dir / "run.cfg", "n_max = 4\ntheta_samples = 32\n");
    EXPECT_EQ(run_cli("favard-sweep --config " + (dir / "run.cfg").string() + " --out " +
                      dir.string() + " --jobs 2"),
              0);
    EXPECT_TRUE(fs::exists(dir / "favard_sweep.csv"));
    EXPECT_TRUE(fs::exists(dir / "record_favard-sweep.json"));
    EXPECT_EQ(run_cli("decay-fit --config " + (dir / "run.cfg").string() + " --out " +
                      dir.string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "decay_fit.csv"));
    fs::remove_all(dir);
}

TEST(Cli, SeedFlagControlsAuditStream) {
    fs::path dir = fresh_dir("favard_cli_seed");
    write_config(dir / "run.cfg", "cetsq_sets = 10\n");
    std::string base = "cetsq-audit --config " + (dir / "run.cfg").string() + " --out ";
    EXPECT_EQ(run_cli(base + (dir / "a").string() + " --seed 7"), 0);
    EXPECT_EQ(run_cli(base + (dir / "b").string() + " --seed 7"), 0);
    EXPECT_EQ(run_cli(base + (dir / "c").string() + " --seed 8"), 0);
    auto strip_hash = [](std::string text) {
        return text.substr(text.find('\n') + 1);  // drop the config-hash line
    };
    std::string a = strip_hash(slurp(dir / "a" / "cetsq.csv"));
    std::string b = strip_hash(slurp(dir / "b" / "cetsq.csv"));
    std::string c = strip_hash(slurp(dir / "c" / "cetsq.csv"));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    fs::remove_all(dir);
}

TEST(Cli, ZeroTraceWritesTraceFile) {
    fs::path dir = fresh_dir("favard_cli_trace");
    EXPECT_EQ(run_cli("zero-trace --t0 0.5 --t1 0.47 --m 3 --rect 4.0,5.0,-1.0,1.0 --out " +
                      dir.string()),
              0);
    std::string text = slurp(dir / "traces.json");
    EXPECT_NE(text.find("re_lambda"), std::string::npos);
    EXPECT_NE(text.find("\"t0\": 0.5"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, StackingAuditWritesSpecColumns) {
    fs::path dir = fresh_dir("favard_cli_stack");
    write_config(dir / "run.cfg", "stacking_n_lo = 5\nstacking_n_hi = 6\n");
    EXPECT_EQ(run_cli("stacking-audit --config " + (dir / "run.cfg").string() + " --out " +
                      dir.string() + " --jobs 2"),
              0);
    std::string csv = slurp(dir / "stacking.csv");
    EXPECT_NE(csv.find("theta,N,K,M,ratio"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, TilingScanWritesSpecColumns) {
    fs::path dir = fresh_dir("favard_cli_tiling");
    write_config(dir / "run.cfg", "m = 3\n");
    EXPECT_EQ(run_cli("tiling-scan --config " + (dir / "run.cfg").string() + " --out " +
                      dir.string() + " --jobs 2"),
              0);
    std::string csv = slurp(dir / "tiling.csv");
    EXPECT_NE(csv.find("t,m,x0,delta,min_max_cofactor,critical_k,ssv_interval_count"),
              std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, LemmaFailureExitsTwo) {
    // stability_c = 0.5 genuinely breaks the root-stability range (the lemma
    // needs a small constant), so the suite must report and exit 2.
    fs::path dir = fresh_dir("favard_cli_lemmafail");
    write_config(dir / "run.cfg",
                 "stability_c = 0.5\naudit_samples = 1000\ncetsq_sets = 5\n"
                 "plancherel_n_max = 0\nm = 2\n");
    EXPECT_EQ(run_cli("lemma-suite --config " + (dir / "run.cfg").string() + " --out " +
                      dir.string() + " --jobs 2"),
              2);
    fs::remove_all(dir);
}

TEST(Cli, TilingScanRejectsOversizedEpsilonStar) {
    fs::path dir = fresh_dir("favard_cli_epsstar");
    write_config(dir / "run.cfg", "epsilon_star = 0.25\nm = 2\n");
    EXPECT_EQ(run_cli("tiling-scan --config " + (dir / "run.cfg").string() + " --out " +
                      dir.string()),
              2);
    fs::remove_all(dir);
}

TEST(Cli, RequiresASubcommand) { EXPECT_NE(run_cli(""), 0); }
