#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "tvarch/io.hpp"
#include "tvarch/model.hpp"

using namespace tvarch;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tvarch_cli_test_" + std::to_string(std::rand()) + "_" +
                std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args, const std::string& log) {
    const std::string cmd =
        std::string(TVARCH_CLI_PATH) + " " + args + " >" + log + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

// Shared fixture: an ARCH(1) model file plus a simulated series.
struct CliWorkspace {
    TempDir dir;
    std::string model_path;
    std::string series_path;

    CliWorkspace() {
        model_path = dir.file("model.json");
        io::ModelSpec spec;
        spec.curves = ParamCurves::constant({1.0, 0.3});
        io::write_model_json(model_path, spec);
        const int rc = run_cli("simulate --model " + model_path + " --n 400 --seed 7 --out " +
                                   dir.file("sim"),
                               dir.file("sim.log"));
        REQUIRE(rc == 0);
        series_path = dir.file("sim.csv");
        REQUIRE(fs::exists(series_path));
    }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("usage errors exit with code 2") {
    TempDir d;
    CHECK(run_cli("", d.file("a.log")) == 2);
    CHECK(run_cli("--no-such-flag", d.file("b.log")) == 2);
    CHECK(run_cli("fit --in " + d.file("missing.csv"), d.file("c.log")) == 2);
    CHECK(run_cli("compare-qml --sizes 15 --reps 2", d.file("d.log")) == 2);
    CHECK(run_cli("--config " + d.file("missing.json"), d.file("e.log")) == 2);
    CHECK(run_cli("--help", d.file("f.log")) == 0);
}

TEST_CASE("simulate is reproducible under a fixed seed") {
    CliWorkspace ws;
    CHECK(line_count(slurp(ws.series_path)) == 401);  // header + 400 rows
    CHECK(fs::exists(ws.dir.file("sim.model.json")));

    REQUIRE(run_cli("simulate --model " + ws.model_path + " --n 400 --seed 7 --out " +
                        ws.dir.file("again"),
                    ws.dir.file("again.log")) == 0);
    CHECK(slurp(ws.dir.file("again.csv")) == slurp(ws.series_path));

    REQUIRE(run_cli("simulate --model " + ws.model_path + " --n 400 --seed 8 --out " +
                        ws.dir.file("other"),
                    ws.dir.file("other.log")) == 0);
    CHECK(slurp(ws.dir.file("other.csv")) != slurp(ws.series_path));
}

TEST_CASE("fit writes curve files and only runs cv when asked") {
    CliWorkspace ws;
    const std::string pfx = ws.dir.file("fit1");
    REQUIRE(run_cli("fit --in " + ws.series_path + " --out " + pfx +
                        " -p 1 --b 0.3 --fit-stride 8",
                    ws.dir.file("fit1.log")) == 0);
    const std::string csv = slurp(pfx + ".fit.csv");
    CHECK(csv.rfind("t0,u0,mu_hat,a_0,a_1\n", 0) == 0);
    CHECK(line_count(csv) >= 40);
    CHECK(fs::exists(pfx + ".fit.json"));
    CHECK_FALSE(fs::exists(pfx + ".cv.csv"));

    const std::string pfx2 = ws.dir.file("fit2");
    REQUIRE(run_cli("fit --in " + ws.series_path + " --out " + pfx2 +
                        " -p 1 --cv --grid 0.2,0.3 --stride 20 --fit-stride 8",
                    ws.dir.file("fit2.log")) == 0);
    const std::string cv = slurp(pfx2 + ".cv.csv");
    CHECK(cv.rfind("b,score,skipped,chosen\n", 0) == 0);
    CHECK(cv.find(",1\n") != std::string::npos);  // some row was chosen
}

TEST_CASE("config file supplies defaults and flags override them") {
    CliWorkspace ws;
    const std::string cfg = ws.dir.file("cfg.json");
    io::atomic_write_text(cfg, std::string("{\"command\": \"simulate\", \"model\": \"") +
                                   ws.model_path + "\", \"n\": 100, \"seed\": 3, "
                                   "\"output\": \"" + ws.dir.file("fromcfg") + "\"}\n");
    REQUIRE(run_cli("--config " + cfg, ws.dir.file("cfg1.log")) == 0);
    CHECK(line_count(slurp(ws.dir.file("fromcfg.csv"))) == 101);

    REQUIRE(run_cli("--config " + cfg + " simulate --n 120 --out " + ws.dir.file("overridden"),
                    ws.dir.file("cfg2.log")) == 0);
    CHECK(line_count(slurp(ws.dir.file("overridden.csv"))) == 121);
}

TEST_CASE("bootstrap bands are seed stable and fail loudly on degenerate input") {
    CliWorkspace ws;
    const std::string args = "bootstrap --in " + ws.series_path +
                             " -p 1 --b 0.3 --B 20 --t0 200 --seed 5 --out ";
    REQUIRE(run_cli(args + ws.dir.file("bb1"), ws.dir.file("bb1.log")) == 0);
    REQUIRE(run_cli(args + ws.dir.file("bb2"), ws.dir.file("bb2.log")) == 0);
    const std::string bands = slurp(ws.dir.file("bb1.bands.csv"));
    CHECK(bands.rfind("t0,j,center,lower,upper,level,B,failures\n", 0) == 0);
    CHECK(line_count(bands) == 3);  // header + rows for a_0, a_1
    CHECK(slurp(ws.dir.file("bb2.bands.csv")) == bands);

    // constant series: the local design is singular everywhere
    const std::string flat = ws.dir.file("flat.csv");
    std::string text = "value\n";
    for (int i = 0; i < 50; ++i) text += "1.0\n";
    io::atomic_write_text(flat, text);
    CHECK(run_cli("bootstrap --in " + flat + " -p 1 --b 0.5 --B 5 --t0 25 --out " +
                      ws.dir.file("flatboot"),
                  ws.dir.file("flat.log")) == 1);
}

TEST_CASE("diagnose emits acf and summary tables") {
    CliWorkspace ws;
    const std::string pfx = ws.dir.file("diag");
    REQUIRE(run_cli("diagnose --in " + ws.series_path + " -p 1 --b 0.3 --fit-stride 4" +
                        " --max-lag 10 --out " + pfx,
                    ws.dir.file("diag.log")) == 0);
    const std::string acf = slurp(pfx + ".acf.csv");
    CHECK(acf.rfind("lag,autocov,corr\n", 0) == 0);
    CHECK(line_count(acf) == 12);  // header + lags 0..10
    const std::string summary = slurp(pfx + ".summary.csv");
    CHECK(summary.rfind("metric,value\n", 0) == 0);
    CHECK(summary.find("ks_p,") != std::string::npos);
    CHECK(summary.find("lb_z2_p,") != std::string::npos);
}

TEST_CASE("backtest scores spans and external forecast tables") {
    CliWorkspace ws;
    const std::string big = ws.dir.file("big");
    REQUIRE(run_cli("simulate --model " + ws.model_path + " --n 600 --seed 11 --out " + big,
                    ws.dir.file("big.log")) == 0);

    const std::string ext = ws.dir.file("naive.csv");
    io::atomic_write_text(ext, "origin,forecast\n500,25\n525,25\n550,25\n575,25\n");

    const std::string pfx = ws.dir.file("bt");
    REQUIRE(run_cli("backtest --in " + big + ".csv -p 1 --spans 50,100 --H 20" +
                        " --origin-start 500 --origin-stride 25 --external naive=" + ext +
                        " --out " + pfx,
                    ws.dir.file("bt.log")) == 0);
    const std::string summary = slurp(pfx + ".summary.csv");
    CHECK(summary.rfind("model,span,amse,origins,chosen,coverage,coverage_alpha\n", 0) == 0);
    CHECK(summary.find("tvarch_p1,") != std::string::npos);
    CHECK(summary.find(",1,") != std::string::npos);  // a chosen span row
    CHECK(summary.find("naive,") != std::string::npos);
    const std::string rows = slurp(pfx + ".origins.csv");
    CHECK(rows.rfind("t,span,sigma2_bar,x2_bar,y\n", 0) == 0);
    CHECK(line_count(rows) > 1);
}

TEST_CASE("compare-qml writes a deterministic ratio table") {
    CliWorkspace ws;
    const std::string args = "compare-qml --coeffs 1,0.3 --sizes 15,25 --reps 5 --seed 2 --out ";
    REQUIRE(run_cli(args + ws.dir.file("cmp1"), ws.dir.file("cmp1.log")) == 0);
    REQUIRE(run_cli(args + ws.dir.file("cmp2"), ws.dir.file("cmp2.log")) == 0);
    const std::string table = slurp(ws.dir.file("cmp1.csv"));
    CHECK(table.rfind("coefficient,15,25\n", 0) == 0);
    CHECK(table.find("a_0,") != std::string::npos);
    CHECK(table.find("a_1,") != std::string::npos);
    CHECK(table.find("failures,") != std::string::npos);
    CHECK(slurp(ws.dir.file("cmp2.csv")) == table);
}

TEST_SUITE_END();
