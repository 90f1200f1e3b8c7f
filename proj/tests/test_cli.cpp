#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "grassmod/checks.hpp"

using namespace grassmod;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    auto out_path = std::filesystem::temp_directory_path() /
                    ("grassmod_cli_out_" + std::to_string(::getpid()) + ".txt");
    std::string cmd = std::string(GRASSMOD_CLI_PATH) + " " + args + " > " + out_path.string() +
                      " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WEXITSTATUS(rc);
    std::ifstream f(out_path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    res.out = ss.str();
    std::filesystem::remove(out_path);
    return res;
}

}  // namespace

TEST_CASE("enum subcommand lists the projective line") {
    auto res = run_cli("enum --q 2 --n 2 --r 1");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("count=3") != std::string::npos);
    // three basis lines follow the header
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 4);

    auto planes = run_cli("enum --q 2 --n 4 --r 2");
    CHECK(planes.exit_code == 0);
    CHECK(planes.out.find("count=35") != std::string::npos);
    CHECK(std::count(planes.out.begin(), planes.out.end(), '\n') == 36);
}

TEST_CASE("enum rejects oversized requests with a usage error") {
    auto res = run_cli("enum --q 2 --n 9 --r 4");
    CHECK(res.exit_code == 1);
}

TEST_CASE("eta summary and coordinate dump") {
    auto res = run_cli("eta --q 2 --n 3 --r0 1 --r1 2 --s 1");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("rows=7 cols=7 nnz=21 colsum=3") != std::string::npos);

    auto coo = run_cli("eta --q 2 --n 2 --r0 1 --r1 1 --s 1 --coo");
    CHECK(coo.exit_code == 0);
    CHECK(coo.out.find("0 0\n1 1\n2 2\n") != std::string::npos);
}

TEST_CASE("spin subcommand reports the degree-zero identification") {
    auto res = run_cli("spin --q 2 --n 4 --r 2 --coeff rational --seed-vector adjacent");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("spin_dim=34") != std::string::npos);
    CHECK(res.out.find("equals_degree_zero=true") != std::string::npos);

    auto pt = run_cli("spin --q 3 --n 3 --r 1 --coeff 5 --seed-vector point");
    CHECK(pt.exit_code == 0);
    CHECK(pt.out.find("spin_dim=13") != std::string::npos);
}

TEST_CASE("verify runs a named check and honors exit codes") {
    auto pass = run_cli("verify --check lemma6.delta --param p_list=2,3 --param n_max=6 --json");
    CHECK(pass.exit_code == 0);
    auto rep = CheckReport::from_json(pass.out);
    CHECK(rep.outcome == Outcome::Pass);
    CHECK(rep.params.at("p_list") == "2,3");

    auto unknown = run_cli("verify --check not.a.check");
    CHECK(unknown.exit_code == 1);

    auto bad_param = run_cli("verify --check lemma6.delta --param p_list=abc");
    CHECK(bad_param.exit_code == 1);
}

TEST_CASE("verify reports are byte-identical across runs with one seed") {
    std::string cmd = "verify --check lemma1.chain --param cases=2,3,1 --param pairs=10 "
                      "--seed 99 --json";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("list-checks covers the registry with unique anchors") {
    auto res = run_cli("list-checks");
    CHECK(res.exit_code == 0);
    std::set<std::string> seen_ids;
    for (const auto& def : checks::registry()) {
        CHECK(res.out.find(def.id) != std::string::npos);
        CHECK(seen_ids.insert(def.id).second);
    }
    // anchors are pairwise distinct
    std::set<std::string> anchors;
    for (const auto& def : checks::registry()) CHECK(anchors.insert(def.anchor).second);
}

TEST_CASE("cache stat and gc through the CLI") {
    auto dir = std::filesystem::temp_directory_path() /
               ("grassmod_cli_cache_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    auto flag = std::string("--cache-dir ") + dir.string() + " ";
    auto eta = run_cli(flag + "eta --q 2 --n 3 --r0 1 --r1 1 --s 0");
    CHECK(eta.exit_code == 0);
    auto stat = run_cli(flag + "cache stat");
    CHECK(stat.exit_code == 0);
    CHECK(stat.out.find("entries=1") != std::string::npos);
    CHECK(stat.out.find("ok") != std::string::npos);
    auto gc = run_cli(flag + "cache gc --all");
    CHECK(gc.exit_code == 0);
    CHECK(gc.out.find("removed=1") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("suite quick: two runs with the same seed are byte-identical") {
    auto a = run_cli("suite --profile quick --seed 7 --json");
    auto b = run_cli("suite --profile quick --seed 7 --json");
    CHECK(a.exit_code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);

    // the worker pool does not disturb the canonical aggregate
    auto c = run_cli("suite --profile quick --seed 7 --json --jobs 2");
    CHECK(c.exit_code == 0);
    CHECK(c.out == a.out);

    auto bad = run_cli("suite --profile nope");
    CHECK(bad.exit_code == 1);
}
