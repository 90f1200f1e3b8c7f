// grassmod: exact-arithmetic workbench for permutation modules of finite
// linear groups on Grassmannians. See README.md for the full surface.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "grassmod/checks.hpp"

using namespace grassmod;

namespace {

struct GlobalOpts {
    Config cfg = Config::from_env();
    bool json = false;
    bool timings = false;
    std::string out;
};

void write_output(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) fail(Errc::IOFailure, "cannot open " + g.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
}

checks::Params parse_param_flags(const std::vector<std::string>& kvs) {
    checks::Params p;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        require(eq != std::string::npos && eq > 0, Errc::BadParams,
                "--param expects key=value, got '" + kv + "'");
        p[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return p;
}

int cmd_enum(const GlobalOpts& g, std::uint32_t q, std::uint32_t n, std::uint32_t r) {
    const auto& F = finite_field_of_order(q);
    const auto& gi = grassmann_index(F, n, r, g.cfg);
    std::string out = "grassmod-enum p=" + std::to_string(F.p()) + " e=" + std::to_string(F.e()) +
                      " n=" + std::to_string(n) + " r=" + std::to_string(r) +
                      " count=" + std::to_string(gi.size()) + "\n";
    for (const auto& s : gi.table) {
        for (std::size_t k = 0; k < s.basis.size(); ++k) {
            if (k) out += " ";
            out += std::to_string(s.basis[k]);
        }
        if (s.basis.empty()) out += "-";
        out += "\n";
    }

    if (!g.cfg.cache_dir.empty()) {
        cache::CacheKey key{cache::kKindEnumeration, F.p(), F.e(), n, r, 0, 0};
        cache::CachePayload payload;
        payload.rows = std::uint32_t(gi.size());
        payload.cols = r * n;
        for (const auto& s : gi.table)
            payload.codes.insert(payload.codes.end(), s.basis.begin(), s.basis.end());
        cache::put(g.cfg.cache_dir, key, payload);
    }
    write_output(g, out);
    return 0;
}

int cmd_eta(const GlobalOpts& g, std::uint32_t q, std::uint32_t n, std::uint32_t r0,
            std::uint32_t r1, std::uint32_t s, bool coo) {
    const auto& F = finite_field_of_order(q);
    auto op = build_eta(F, n, r0, r1, s, g.cfg);
    std::string out = "grassmod-eta p=" + std::to_string(F.p()) + " e=" + std::to_string(F.e()) +
                      " n=" + std::to_string(n) + " r0=" + std::to_string(r0) +
                      " r1=" + std::to_string(r1) + " s=" + std::to_string(s) +
                      " rows=" + std::to_string(op.rows) + " cols=" + std::to_string(op.cols) +
                      " nnz=" + std::to_string(op.coo.size()) +
                      " colsum=" + std::to_string(op.cols ? op.column_sums()[0] : 0) + "\n";
    if (coo) {
        for (auto [rr, cc] : op.coo)
            out += std::to_string(rr) + " " + std::to_string(cc) + "\n";
    }
    write_output(g, out);
    return 0;
}

int cmd_spin(const GlobalOpts& g, std::uint32_t q, std::uint32_t n, std::uint32_t r,
             const std::string& coeff, const std::string& seed_vec) {
    const auto& F = finite_field_of_order(q);
    const auto& gi = grassmann_index(F, n, r, g.cfg);
    auto gens = gl_generators(F, n);

    auto run = [&](const auto& K, const std::string& label) -> std::string {
        using FT = std::decay_t<decltype(K)>;
        ModuleVector<FT> seed(K, gi);
        if (seed_vec == "point") {
            seed.coeffs[0] = K.one();
        } else if (seed_vec == "adjacent") {
            seed.coeffs[0] = K.one();
            bool found = false;
            for (std::size_t j = 1; j < gi.size() && !found; ++j) {
                auto inv = pair_orbit_invariant(gi.table[0], gi.table[j]);
                if (inv.c == 1 && inv.cp == 1) {
                    seed.coeffs[j] = K.neg(K.one());
                    found = true;
                }
            }
            require(found, Errc::BadParams, "no adjacent pair in this Grassmannian");
        } else {
            fail(Errc::BadParams, "--seed-vector must be 'adjacent' or 'point'");
        }
        auto sub = spin_one(seed, gens, g.cfg);
        std::string out = "grassmod-spin q=" + std::to_string(q) + " n=" + std::to_string(n) +
                          " r=" + std::to_string(r) + " coeff=" + label + " seed=" + seed_vec +
                          " module_dim=" + std::to_string(gi.size()) +
                          " spin_dim=" + std::to_string(sub.dim());
        if (seed_vec == "adjacent")
            out += std::string(" equals_degree_zero=") +
                   (sub.dim() == gi.size() - 1 ? "true" : "false");
        return out + "\n";
    };

    std::string out;
    if (coeff == "rational") {
        out = run(rational_field(), "Q");
    } else {
        std::uint32_t ell = std::uint32_t(checks::to_u64(coeff));
        out = run(finite_field_of_order(ell), "F" + std::to_string(ell));
    }
    write_output(g, out);
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& id, const std::vector<std::string>& kvs,
               std::uint64_t seed, bool quick) {
    auto overrides = parse_param_flags(kvs);
    auto rep = checks::run_check(id, overrides, g.cfg, seed, quick);
    if (g.json) {
        write_output(g, rep.to_json(g.timings));
    } else {
        std::string line = std::string(outcome_name(rep.outcome)) + " " + rep.check_id;
        if (rep.witness) line += "  [" + *rep.witness + "]";
        if (g.timings) line += "  (" + std::to_string(rep.runtime_ms) + " ms)";
        write_output(g, line);
    }
    return rep.exit_code();
}

int cmd_suite(const GlobalOpts& g, const std::string& profile, std::uint64_t seed, unsigned jobs) {
    require(profile == "quick" || profile == "full", Errc::BadParams,
            "profile must be 'quick' or 'full'");
    bool quick = profile == "quick";

    const auto& defs = checks::registry();
    std::vector<CheckReport> reports(defs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= defs.size()) return;
            reports[i] = checks::run_check(defs[i].id, {}, g.cfg, seed, quick);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(reports.begin(), reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });

    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto& r : reports) {
        switch (r.outcome) {
            case Outcome::Pass: ++counts[0]; break;
            case Outcome::Fail: ++counts[1]; break;
            case Outcome::Inconclusive: ++counts[2]; break;
            case Outcome::Skipped: ++counts[3]; break;
        }
        std::cerr << outcome_name(r.outcome) << " " << r.check_id << " (" << r.runtime_ms
                  << " ms)\n";
    }

    // canonical aggregate: no timings, checks sorted by id, keys sorted
    std::string agg = "{\"checks\":[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) agg += ",";
        agg += reports[i].to_json(false);
    }
    agg += "],\"counts\":{\"fail\":\"" + std::to_string(counts[1]) + "\",\"inconclusive\":\"" +
           std::to_string(counts[2]) + "\",\"pass\":\"" + std::to_string(counts[0]) +
           "\",\"skipped\":\"" + std::to_string(counts[3]) + "\"},\"profile\":\"" + profile +
           "\",\"seed\":\"" + std::to_string(seed) + "\",\"tool_version\":\"" +
           std::string(kToolVersion) + "\"}";

    if (g.json) {
        write_output(g, agg);
    } else {
        std::string text;
        for (const auto& r : reports)
            text += std::string(outcome_name(r.outcome)) + " " + r.check_id + "\n";
        text += "pass " + std::to_string(counts[0]) + ", fail " + std::to_string(counts[1]) +
                ", inconclusive " + std::to_string(counts[2]) + ", skipped " +
                std::to_string(counts[3]) + "\n";
        write_output(g, text);
    }

    if (counts[1]) return 2;
    if (counts[2]) return 3;
    if (counts[3]) return 4;
    return 0;
}

int cmd_list_checks(const GlobalOpts& g) {
    std::string out;
    if (g.json) {
        out += "[";
        bool first = true;
        for (const auto& def : checks::registry()) {
            if (!first) out += ",";
            first = false;
            out += "{\"anchor\":\"" + CheckReport::escape(def.anchor) + "\",\"id\":\"" +
                   CheckReport::escape(def.id) + "\"}";
        }
        out += "]";
    } else {
        for (const auto& def : checks::registry()) out += def.id + "\n    " + def.anchor + "\n";
    }
    write_output(g, out);
    return 0;
}

int cmd_cache(const GlobalOpts& g, const std::string& sub, bool all) {
    require(!g.cfg.cache_dir.empty(), Errc::BadParams, "no cache directory configured");
    if (sub == "stat") {
        std::string out;
        std::size_t total = 0;
        for (const auto& e : cache::stat_entries(g.cfg.cache_dir)) {
            out += e.name + " " + std::to_string(e.size) + " " + (e.valid ? "ok" : "corrupt") + "\n";
            ++total;
        }
        out += "entries=" + std::to_string(total) + " dir=" + g.cfg.cache_dir + "\n";
        write_output(g, out);
        return 0;
    }
    if (sub == "gc") {
        auto removed = cache::gc(g.cfg.cache_dir, all);
        write_output(g, "removed=" + std::to_string(removed) + "\n");
        return 0;
    }
    fail(Errc::BadParams, "cache subcommand must be 'stat' or 'gc'");
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOpts g;

    CLI::App app{"exact verification workbench for subspace permutation modules"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags are accepted after the subcommand name

    app.add_option("--cache-dir", g.cfg.cache_dir, "operator cache directory");
    app.add_option("--max-grassmannian", g.cfg.max_grassmannian, "enumeration size cap");
    app.add_option("--max-spin-dim", g.cfg.max_spin_dim, "spun basis dimension cap");
    app.add_option("--max-ambient", g.cfg.max_ambient, "ambient dimension cap");
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_flag("--timings", g.timings, "include wall-clock timings in reports");
    app.add_option("--out", g.out, "write output to a file instead of stdout");

    std::uint64_t seed = g.cfg.seed;
    app.add_option("--seed", seed, "seed for pseudorandom draws");

    std::uint32_t q = 2, n = 2, r = 1, r0 = 1, r1 = 1, s = 0;
    bool coo = false, all = false, quick = false;
    std::string check_id, profile = "quick", coeff = "rational", seed_vec = "adjacent";
    std::string cache_sub;
    std::vector<std::string> kvs;
    unsigned jobs = 1;

    auto* c_enum = app.add_subcommand("enum", "enumerate a Grassmannian");
    c_enum->add_option("--q", q, "field order")->required();
    c_enum->add_option("--n", n, "ambient dimension")->required();
    c_enum->add_option("--r", r, "subspace dimension")->required();

    auto* c_eta = app.add_subcommand("eta", "build an incidence operator");
    c_eta->add_option("--q", q)->required();
    c_eta->add_option("--n", n)->required();
    c_eta->add_option("--r0", r0)->required();
    c_eta->add_option("--r1", r1)->required();
    c_eta->add_option("--s", s)->required();
    c_eta->add_flag("--coo", coo, "dump coordinate pairs");

    auto* c_spin = app.add_subcommand("spin", "spin a seed vector to a submodule");
    c_spin->add_option("--q", q)->required();
    c_spin->add_option("--n", n)->required();
    c_spin->add_option("--r", r)->required();
    c_spin->add_option("--coeff", coeff, "'rational' or a prime power");
    c_spin->add_option("--seed-vector", seed_vec, "'adjacent' or 'point'");

    auto* c_verify = app.add_subcommand("verify", "run one named check");
    c_verify->add_option("--check", check_id, "check id (see list-checks)")->required();
    c_verify->add_option("--param", kvs, "key=value parameter override");
    c_verify->add_flag("--quick", quick, "start from the quick-profile defaults");

    auto* c_suite = app.add_subcommand("suite", "run the whole check matrix");
    c_suite->add_option("--profile", profile, "'quick' or 'full'");
    c_suite->add_option("--jobs", jobs, "worker threads");

    app.add_subcommand("list-checks", "list check ids and what they verify");

    auto* c_cache = app.add_subcommand("cache", "cache maintenance");
    c_cache->add_option("subcommand", cache_sub, "'stat' or 'gc'")->required();
    c_cache->add_flag("--all", all, "gc: drop every entry, not only corrupt ones");

    CLI11_PARSE(app, argc, argv);
    g.cfg.seed = seed;

    try {
        if (c_enum->parsed()) return cmd_enum(g, q, n, r);
        if (c_eta->parsed()) return cmd_eta(g, q, n, r0, r1, s, coo);
        if (c_spin->parsed()) return cmd_spin(g, q, n, r, coeff, seed_vec);
        if (c_verify->parsed()) return cmd_verify(g, check_id, kvs, seed, quick);
        if (c_suite->parsed()) return cmd_suite(g, profile, seed, jobs);
        if (app.get_subcommand("list-checks")->parsed()) return cmd_list_checks(g);
        if (c_cache->parsed()) return cmd_cache(g, cache_sub, all);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
