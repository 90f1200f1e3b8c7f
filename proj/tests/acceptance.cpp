// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <path-to-grassmod-cli>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "grassmod/checks.hpp"

using namespace grassmod;

namespace {

constexpr std::uint64_t kSeed = 20260808;

struct Criterion {
    int number;
    std::string title;
    double budget_seconds;
    std::vector<std::string> check_ids;  // all must pass, full-profile parameters
};

std::string cli_path;

bool run_cli_to_file(const std::string& args, const std::string& out_file) {
    std::string cmd = cli_path + " " + args + " --out " + out_file + " 2>/dev/null";
    return std::system(cmd.c_str()) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool run_criterion(const Criterion& c, const Config& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    if (c.number == 9) {
        // byte-identical aggregate reports from two quick-profile suite runs
        auto dir = std::filesystem::temp_directory_path();
        auto f1 = (dir / "grassmod_acc_suite_1.json").string();
        auto f2 = (dir / "grassmod_acc_suite_2.json").string();
        ok = run_cli_to_file("suite --profile quick --seed 7 --json", f1) &&
             run_cli_to_file("suite --profile quick --seed 7 --json", f2);
        if (ok) {
            auto a = slurp(f1), b = slurp(f2);
            ok = !a.empty() && a == b;
            if (!ok) detail = "aggregates differ";
        } else {
            detail = "suite invocation failed";
        }
        std::filesystem::remove(f1);
        std::filesystem::remove(f2);
    } else {
        for (const auto& id : c.check_ids) {
            auto rep = checks::run_check(id, {}, cfg, kSeed, /*quick_defaults=*/false);
            if (rep.outcome != Outcome::Pass) {
                ok = false;
                detail = id + ": " + outcome_name(rep.outcome);
                if (rep.witness) detail += " [" + *rep.witness + "]";
                break;
            }
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    if (ok && secs > c.budget_seconds) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + "s exceeds budget " +
                 std::to_string(c.budget_seconds) + "s";
    }
    std::printf("[%s] %d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-grassmod-cli>\n");
        return 1;
    }
    cli_path = argv[1];

    Config cfg;  // defaults; no cache so every run rebuilds from scratch
    cfg.cache_dir.clear();

    std::vector<Criterion> criteria = {
        {1,
         "alternating-subsum determinants are exactly +/- p^m for p in {2,3,5,7,11}, N <= 12",
         5.0,
         {"lemma6.delta"}},
        {2,
         "Hom dimensions count meet classes, End algebras commute, and the rational "
         "decomposition has min(r,n-r)+1 orthogonal simple summands on the full grid",
         600.0,
         {"lemma2.hom_dims", "lemma2.end_commutes", "prop1.decompose"}},
        {3,
         "operator transposes swap source and target for every buildable parameter set",
         600.0,
         {"remark1.duality"}},
        {4,
         "one adjacent difference spins to the whole degree-zero submodule and chains "
         "telescope exactly on 200 seeded pairs per case",
         300.0,
         {"lemma1.spin", "lemma1.chain"}},
        {5,
         "degree-zero simplicity: certified for dim V = 2 at q in {2,3}, sampled at {4,5}, "
         "refuted by a symmetric-power kernel witness for dim V = 3; 100 seeded "
         "group-algebra power identities per characteristic",
         300.0,
         {"prop4.simple", "prop4.sym_kernel", "lemma4.beta_power"}},
        {6,
         "socle structure reproduces both divisibility branches and 50 seeded translation-sum "
         "identities hold per configuration",
         300.0,
         {"prop3.socle", "prop3.translation_sum"}},
        {7,
         "signed subset-sum recursion on 100 seeded pencils, annihilator construction on 50 "
         "seeded configurations (skip rate < 50% at q >= 5), and the exact line-case reduction",
         600.0,
         {"thm1.gamma_recursion", "thm1.xi_annihilation", "thm1.r1_reduction"}},
        {8,
         "exhaustive rank-one sweeps: at most one singular value of t, closed-form inverses "
         "verified, for q in {2,3,5}, n in {1,2,3}",
         60.0,
         {"lemma5.rank_one"}},
        {9, "two quick-profile suite runs with one seed emit byte-identical aggregates", 300.0, {}},
    };

    int failures = 0;
    for (const auto& c : criteria)
        if (!run_criterion(c, cfg)) ++failures;

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
