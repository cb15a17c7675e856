#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "precode/cli.hpp"

using namespace precode;
namespace fs = std::filesystem;

namespace {

fs::path make_tmpdir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("precode_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv = {"precode-lab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

const char* kSmallConfig =
    "# tiny smoke scenario\n"
    "n = 8\n"
    "k = 4\n"
    "g = 2\n"
    "t = 5\n"
    "ebn0 = 4:4:8\n"
    "max_blocks = 32\n"
    "min_bit_errors = 0\n"
    "seed = 3\n";

}  // namespace

TEST_CASE("parse_range: inclusive start:step:stop") {
    const auto g = parse_range("0:4:24");
    REQUIRE(g.size() == 7);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 24.0);
    CHECK(parse_range("12").size() == 1);
    CHECK(parse_range("12:4:13").size() == 1);
    CHECK_THROWS_AS(parse_range("1:0:5"), ParamError);
    CHECK_THROWS_AS(parse_range("a:b:c"), ParamError);
}

TEST_CASE("format_num round-trips at 12 significant digits") {
    for (double v : {0.000123456789012, 520800.0, 1.0 / 3.0, 9.87654321e12}) {
        const double back = std::stod(format_num(v));
        CHECK(std::abs(back - v) <= 1e-11 * std::abs(v));
    }
}

TEST_CASE("config parser: values, comments, unknown keys") {
    const auto dir = make_tmpdir("cfg");
    write_file(dir / "ok.cfg", kSmallConfig);
    const SystemConfig cfg = parse_config_file((dir / "ok.cfg").string());
    CHECK(cfg.n == 8);
    CHECK(cfg.k == 4);
    CHECK(cfg.ebn0_grid_db == std::vector<double>{4.0, 8.0});
    CHECK(cfg.seed == 3);

    write_file(dir / "bad.cfg", "n = 8\nbogus_key = 1\n");
    try {
        parse_config_file((dir / "bad.cfg").string());
        FAIL("expected ParamError");
    } catch (const ParamError& e) {
        CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_file((dir / "missing.cfg").string()),
                    ParamError);
}

TEST_CASE("simulate subcommand writes ber.csv with the expected shape") {
    const auto dir = make_tmpdir("sim");
    write_file(dir / "run.cfg", kSmallConfig);
    setenv("PRECODE_LAB_TIMESTAMP", "2026-01-01T00:00:00Z", 1);
    const int code = run({"simulate", "--config", (dir / "run.cfg").string(),
                          "--out", dir.string()});
    CHECK(code == 0);

    const std::string text = slurp(dir / "ber.csv");
    CHECK(text.find("# tool = precode-lab") != std::string::npos);
    CHECK(text.find("# timestamp = 2026-01-01T00:00:00Z") != std::string::npos);
    CHECK(text.find("scheme,ebn0_db,bits,errors,ber,blocks_used,"
                    "degenerate_blocks") != std::string::npos);
    int data_rows = 0;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line[0] != '#' && line.find("scheme,") != 0)
            ++data_rows;
    }
    CHECK(data_rows == 4 * 2);  // 4 schemes x 2 grid points
}

TEST_CASE("simulate: overrides filter schemes and grid; output is byte-stable") {
    const auto dir = make_tmpdir("ovr");
    write_file(dir / "run.cfg", kSmallConfig);
    setenv("PRECODE_LAB_TIMESTAMP", "2026-01-01T00:00:00Z", 1);
    const std::vector<std::string> args = {
        "simulate", "--config", (dir / "run.cfg").string(),
        "--schemes", "thp",     "--ebn0",
        "0:4:8",    "--out",    dir.string()};
    CHECK(run(args) == 0);
    const std::string first = slurp(dir / "ber.csv");
    CHECK(run(args) == 0);
    CHECK(slurp(dir / "ber.csv") == first);

    int thp_rows = 0;
    std::stringstream ss(first);
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind("thp,", 0) == 0) ++thp_rows;
    CHECK(thp_rows == 3);
    CHECK(first.find("rzf,") == std::string::npos);
}

TEST_CASE("simulate: config errors exit 2, infeasible configs exit 3") {
    const auto dir = make_tmpdir("err");
    write_file(dir / "bad.cfg", "mystery = 1\n");
    CHECK(run({"simulate", "--config", (dir / "bad.cfg").string(), "--out",
               dir.string()}) == 2);

    // K/G = 8 users per group is infeasible at N=8 with G=2 (needs L >= 1).
    write_file(dir / "infeasible.cfg",
               "n = 8\nk = 16\ng = 2\nt = 2\nebn0 = 4\nmax_blocks = 4\n"
               "min_bit_errors = 0\nschemes = hlthp\n");
    CHECK(run({"simulate", "--config", (dir / "infeasible.cfg").string(),
               "--out", dir.string()}) == 3);
}

TEST_CASE("complexity subcommand writes flops.csv with residuals") {
    const auto dir = make_tmpdir("cx");
    setenv("PRECODE_LAB_TIMESTAMP", "2026-01-01T00:00:00Z", 1);
    CHECK(run({"complexity", "--K", "8:8:32", "--N", "32", "--G", "4", "--T",
               "100", "--out", dir.string()}) == 0);
    const std::string text = slurp(dir / "flops.csv");
    CHECK(text.find("scheme,K,N,G,T,flops,residual") != std::string::npos);
    int rows = 0;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#' || line.find("scheme,") == 0) continue;
        ++rows;
        // Residual column (last) must be tiny relative to flops (second last).
        const auto last_comma = line.rfind(',');
        const auto prev_comma = line.rfind(',', last_comma - 1);
        const double residual = std::stod(line.substr(last_comma + 1));
        const double row_flops =
            std::stod(line.substr(prev_comma + 1, last_comma - prev_comma - 1));
        CHECK(residual <= 1e-6 * row_flops);
    }
    CHECK(rows == 16);

    // No K in range divisible by G -> exit 2.
    CHECK(run({"complexity", "--K", "3:4:7", "--G", "4", "--out",
               dir.string()}) == 2);
}
