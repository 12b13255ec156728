#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mvb/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* cli_path() {
    const char* p = std::getenv("MVB_CLI");
    REQUIRE_MESSAGE(p != nullptr, "MVB_CLI must point at the built binary");
    return p;
}

const char* data_dir() {
    const char* p = std::getenv("MVB_DATA");
    REQUIRE_MESSAGE(p != nullptr, "MVB_DATA must point at the data directory");
    return p;
}

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "mvb_cli_tests";
    fs::create_directories(dir);
    return dir;
}

RunResult run(const std::string& args) {
    fs::path dir = work_dir();
    fs::path out = dir / "stdout.txt";
    fs::path err = dir / "stderr.txt";
    std::string cmd = std::string(cli_path()) + " " + args + " > "
                      + out.string() + " 2> " + err.string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string karate() { return (fs::path(data_dir()) / "karate.edges").string(); }

} // namespace

TEST_CASE("detect prints modularity and is byte-deterministic per seed") {
    fs::path dir = work_dir();
    fs::path p1 = dir / "part1.txt";
    fs::path p2 = dir / "part2.txt";
    RunResult r1 = run("detect --in " + karate() + " --out " + p1.string());
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("Q=0.4") != std::string::npos);
    RunResult r2 = run("detect --in " + karate() + " --out " + p2.string());
    CHECK(r2.exit_code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1).rfind("# mvbackbone", 0) == 0); // metadata block first
}

TEST_CASE("detect on an empty file exits 2 with 'no edges'") {
    fs::path dir = work_dir();
    fs::path empty = dir / "empty.edges";
    std::ofstream(empty.string()) << "";
    RunResult r = run("detect --in " + empty.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("no edges") != std::string::npos);
}

TEST_CASE("extract mv at 30 percent gives the rounded size") {
    fs::path dir = work_dir();
    fs::path out = dir / "bb.edges";
    RunResult r = run("extract --method mv --size 0.3 --in " + karate()
                      + " --out " + out.string() + " --trace");
    CHECK(r.exit_code == 0);
    auto loaded = mvb::load_edge_list(out.string());
    CHECK(loaded.graph.node_count() == 10); // round(0.3 * 34)
    CHECK(fs::exists(out.string() + ".trace"));

    SUBCASE("re-running the same config rewrites identical bytes") {
        std::string backbone = slurp(out), trace = slurp(out.string() + ".trace");
        RunResult r2 = run("extract --method mv --size 0.3 --in " + karate()
                           + " --out " + out.string() + " --trace");
        CHECK(r2.exit_code == 0);
        CHECK(slurp(out) == backbone);
        CHECK(slurp(out.string() + ".trace") == trace);
    }
}

TEST_CASE("extract at full size reproduces the input graph") {
    fs::path dir = work_dir();
    fs::path out = dir / "full.edges";
    RunResult r = run("extract --method mv --size 1.0 --in " + karate()
                      + " --out " + out.string());
    CHECK(r.exit_code == 0);
    auto in = mvb::load_edge_list(karate());
    auto outg = mvb::load_edge_list(out.string());
    CHECK(outg.graph.node_count() == in.graph.node_count());
    CHECK(outg.graph.edge_count() == in.graph.edge_count());
    CHECK(outg.graph.total_weight()
          == doctest::Approx(in.graph.total_weight()).epsilon(1e-9));
}

TEST_CASE("ego extraction without overlaps reports the problem and exits 2") {
    fs::path dir = work_dir();
    fs::path tree = dir / "tree.edges";
    std::ofstream(tree.string()) << "a b 1\nb c 1\nc d 1\n";
    RunResult r = run("extract --method ego --size 0.5 --in " + tree.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("no overlapping nodes") != std::string::npos);
}

TEST_CASE("vitality writes ranked tab-separated scores") {
    fs::path dir = work_dir();
    fs::path out = dir / "scores.tsv";
    RunResult r = run("vitality --in " + karate() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    int expected_rank = 1;
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream f(line);
        std::string label;
        double alpha;
        int rank;
        REQUIRE((f >> label >> alpha >> rank));
        CHECK(rank == expected_rank++);
        ++rows;
    }
    CHECK(rows == 34);
}

TEST_CASE("compare emits a table and a csv twin") {
    fs::path dir = work_dir();
    fs::path csv = dir / "cmp.csv";
    RunResult r = run("--quiet compare --methods mv,ego --size 0.3 --in "
                      + karate() + " --csv " + csv.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("mv") != std::string::npos);
    CHECK(r.out.find("ego") != std::string::npos);
    CHECK(r.out.find('*') != std::string::npos); // winner marks
    std::string csv_text = slurp(csv);
    CHECK(csv_text.rfind("network,method,", 0) == 0);

    SUBCASE("the same method twice gives identical rows") {
        RunResult r2 = run("--quiet compare --methods mv,mv --size 0.3 --in "
                           + karate() + " --csv " + csv.string());
        CHECK(r2.exit_code == 0);
        std::istringstream lines(slurp(csv));
        std::string header, row1, row2;
        std::getline(lines, header);
        std::getline(lines, row1);
        std::getline(lines, row2);
        CHECK(row1 == row2);
    }
}

TEST_CASE("export writes dot") {
    fs::path dir = work_dir();
    fs::path out = dir / "g.dot";
    RunResult r = run("export --format dot --in " + karate() + " --out "
                      + out.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out).rfind("graph", 0) == 0);
}

TEST_CASE("undersized target is an input error") {
    fs::path dir = work_dir();
    fs::path tiny = dir / "tiny.edges";
    std::ofstream(tiny.string()) << "a b 1\nb c 1\nc a 1\n";
    RunResult r = run("extract --method mv --size 0.3 --in " + tiny.string());
    CHECK(r.exit_code == 2);
}
