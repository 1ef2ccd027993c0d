// strat: support varieties of modules over elementary abelian group algebras.
//
// Subcommands:
//   strat support -i FILE [--D N|auto]      variety of a module (JSON out)
//   strat check KIND [flags]                seeded verification sweeps
//   strat random --seed S --p P --r R --dim N   deterministic module generator
//
// Exit codes: 0 all checks pass, 1 mathematical failure, 2 usage/input error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "strat/dg.hpp"
#include "strat/json_io.hpp"

using namespace strat;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw UsageError("cannot write " + out_path);
        out << text << "\n";
    }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct SweepConfig {
    std::vector<int> ps{2};
    std::vector<int> rs{2};
    int trials = 20;
    uint64_t seed = 1;
    int max_dim = 12;
    std::string hopf = "group";
    std::string out_path;
    // bgg extras
    std::string window = "-6..6";
    int jm = 4;
};

json trial_record(int index, bool pass, double ms) {
    json t;
    t["index"] = index;
    t["pass"] = pass;
    t["ms"] = ms;
    return t;
}

json report_skeleton(const std::string& kind, const SweepConfig& cfg) {
    json rep;
    rep["schema"] = kSchemaVersion;
    rep["version"] = kToolVersion;
    rep["check"] = kind;
    rep["config"] = {{"p", cfg.ps},     {"r", cfg.rs},           {"trials", cfg.trials},
                     {"seed", cfg.seed}, {"max_dim", cfg.max_dim}, {"hopf", cfg.hopf}};
    rep["trials"] = json::array();
    return rep;
}

void finalize_report(json& rep, const std::string& out_path, int& exit_code) {
    int total = 0, passed = 0;
    for (const auto& t : rep["trials"]) {
        ++total;
        if (t["pass"].get<bool>()) ++passed;
    }
    rep["summary"] = {{"trials", total}, {"pass", passed}, {"fail", total - passed}};
    rep["pass"] = (passed == total);
    emit(out_path, rep.dump(2));
    exit_code = (passed == total) ? 0 : 1;
}

json check_varieties_json(const CheckReport& cr) {
    json v;
    for (const auto& [name, gens] : cr.varieties) v[name] = gens;
    return v;
}

int run_check(const std::string& kind, const SweepConfig& cfg) {
    Rng root(cfg.seed);
    Hopf hopf = (cfg.hopf == "lie") ? Hopf::Lie : Hopf::Group;
    json rep = report_skeleton(kind, cfg);
    int exit_code = 0;
    int index = 0;

    auto record_module_inputs = [&](json& t, const FdModule& m, const char* name) {
        std::string mj = module_to_json(m);
        t["inputs"][name] = json::parse(mj);
        t["inputs"][std::string(name) + "_hash"] = content_hash(mj);
    };

    if (kind == "tensor") {
        for (int p : cfg.ps)
            for (int r : cfg.rs)
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    auto t0 = std::chrono::steady_clock::now();
                    Rng s = root.stream("tensor", p, r, trial);
                    FdModule m = random_module(s.stream("m"), p, r, cfg.max_dim);
                    FdModule n = random_module(s.stream("n"), p, r, cfg.max_dim);
                    CheckReport cr = check_tensor_theorem(m, n, hopf);
                    json t = trial_record(index++, cr.pass, ms_since(t0));
                    t["cell"] = {{"p", p}, {"r", r}, {"trial", trial}};
                    record_module_inputs(t, m, "m");
                    record_module_inputs(t, n, "n");
                    t["varieties"] = check_varieties_json(cr);
                    t["D"] = cr.D_used;
                    rep["trials"].push_back(std::move(t));
                }
    } else if (kind == "subgroup" || kind == "induction") {
        for (int p : cfg.ps)
            for (int r : cfg.rs) {
                if (r < 2) continue;
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    auto t0 = std::chrono::steady_clock::now();
                    Rng s = root.stream(kind, p, r, trial);
                    int corank = 1 + static_cast<int>(s.stream("corank").below(2));
                    if (r - corank < 1) corank = 1;
                    int rsub = r - corank;
                    SubgroupEmbedding e = random_embedding(s.stream("emb"), p, r, rsub);
                    CheckReport cr;
                    json t;
                    if (kind == "subgroup") {
                        FdModule m = random_module(s.stream("m"), p, r, cfg.max_dim);
                        cr = check_subgroup_theorem(m, e);
                        t = trial_record(index++, cr.pass, ms_since(t0));
                        record_module_inputs(t, m, "m");
                    } else {
                        FdModule n = random_module(s.stream("n"), p, rsub, cfg.max_dim);
                        cr = check_induction_support(n, e);
                        t = trial_record(index++, cr.pass, ms_since(t0));
                        record_module_inputs(t, n, "n");
                    }
                    t["cell"] = {{"p", p}, {"r", r}, {"trial", trial}};
                    t["inputs"]["embedding"] = json::parse(embedding_to_json(e));
                    t["varieties"] = check_varieties_json(cr);
                    t["D"] = cr.D_used;
                    rep["trials"].push_back(std::move(t));
                }
            }
    } else if (kind == "oracle") {
        for (int p : cfg.ps)
            for (int r : cfg.rs)
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    auto t0 = std::chrono::steady_clock::now();
                    Rng s = root.stream("oracle", p, r, trial);
                    FdModule m = random_module(s.stream("m"), p, r, cfg.max_dim);
                    SupportResult sup = support_of_module(m);
                    Variety rank = rank_variety_oracle(m);
                    bool pass = variety_equals(sup.variety, rank);
                    json t = trial_record(index++, pass, ms_since(t0));
                    t["cell"] = {{"p", p}, {"r", r}, {"trial", trial}};
                    record_module_inputs(t, m, "m");
                    t["varieties"] = {{"support", variety_generator_strings(sup.variety)},
                                      {"rank_variety", variety_generator_strings(rank)}};
                    t["D"] = sup.D_used;
                    rep["trials"].push_back(std::move(t));
                }
    } else if (kind == "chouinard") {
        std::vector<std::pair<GroupTable, std::vector<std::vector<int>>>> groups;
        groups.push_back({cyclic_group(4), {{2}}});          // Z/4, elementary abelian <a^2>
        groups.push_back({quaternion_group(), {{1}}});       // Q8, centre {1,-1}
        for (auto& [G, subs] : groups) {
            {
                auto t0 = std::chrono::steady_clock::now();
                CheckReport cr = check_chouinard(group_trivial(G, 2), subs);
                json t = trial_record(index++, cr.pass, ms_since(t0));
                t["inputs"]["group"] = G.name;
                t["inputs"]["module"] = "k";
                rep["trials"].push_back(std::move(t));
            }
            {
                auto t0 = std::chrono::steady_clock::now();
                CheckReport cr = check_chouinard(group_regular(G, 2), subs);
                json t = trial_record(index++, cr.pass, ms_since(t0));
                t["inputs"]["group"] = G.name;
                t["inputs"]["module"] = "kG";
                rep["trials"].push_back(std::move(t));
            }
            for (int trial = 0; trial < cfg.trials; ++trial) {
                auto t0 = std::chrono::steady_clock::now();
                Rng s = root.stream("chouinard", G.order, 0, trial);
                GroupModule m = random_group_module(s, G, 2, 16);
                CheckReport cr = check_chouinard(m, subs);
                json t = trial_record(index++, cr.pass, ms_since(t0));
                t["inputs"]["group"] = G.name;
                t["inputs"]["module_dim"] = m.dim;
                rep["trials"].push_back(std::move(t));
            }
        }
    } else if (kind == "bgg") {
        // window parse: "a..b"
        int wlo = -6, whi = 6;
        {
            auto pos = cfg.window.find("..");
            if (pos == std::string::npos) throw UsageError("window must be LO..HI");
            wlo = std::stoi(cfg.window.substr(0, pos));
            whi = std::stoi(cfg.window.substr(pos + 2));
        }
        for (int p : cfg.ps)
            for (int r : cfg.rs) {
                auto t0 = std::chrono::steady_clock::now();
                bool pass = true;
                std::string detail;
                try {
                    PhiMap phi = phi_lambda_to_A(p, r);
                    QuasiIsoReport qr = verify_quasi_iso(phi.lambda, phi.target, phi.f, -r);
                    pass = pass && qr.pass;
                    TruncatedJ J = build_truncated_J(p, r, cfg.jm);
                    ChainComplex jc = complex_of(J.module);
                    std::vector<int> h = homology_dims(jc);
                    for (int n = 0; n <= std::min(cfg.jm - 2, J.module.hi); ++n)
                        if (h[n] != (n == 0 ? 1 : 0)) pass = false;
                    ext_A_hilbert(p, r, std::max(0, whi));
                    // windowed hom_J of the truncation reproduces S in low degrees
                    DgModule N = hom_J(J.module, wlo, whi);
                    std::vector<int> hn = homology_dims(complex_of(N));
                    for (int n = std::max(0, wlo + 1); n <= std::min(cfg.jm - 2, whi - 1); ++n) {
                        int expect = 0;
                        if (n % 2 == 0) {
                            expect = 1;
                            for (int i = 0; i < r - 1; ++i) expect = expect * (n / 2 + i + 1) / (i + 1);
                        }
                        if (hn[n - wlo] != expect) pass = false;
                    }
                } catch (const VerificationError& e) {
                    pass = false;
                    detail = e.what();
                }
                json t = trial_record(index++, pass, ms_since(t0));
                t["cell"] = {{"p", p}, {"r", r}, {"window", cfg.window}, {"m", cfg.jm}};
                if (!detail.empty()) t["detail"] = detail;
                rep["trials"].push_back(std::move(t));
            }
    } else {
        throw UsageError("unknown check kind: " + kind);
    }

    int exit_code_final = 0;
    finalize_report(rep, cfg.out_path, exit_code_final);
    (void)exit_code;
    return exit_code_final;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"support varieties over elementary abelian group algebras"};
    app.require_subcommand(1);

    // support
    auto* sup = app.add_subcommand("support", "compute the support variety of a module");
    std::string sup_input;
    std::string sup_D = "auto";
    std::string sup_out;
    sup->add_option("-i,--input", sup_input, "module JSON file")->required();
    sup->add_option("--D", sup_D, "truncation degree (integer or 'auto')");
    sup->add_option("--out", sup_out, "output path (default stdout)");

    // check
    auto* chk = app.add_subcommand("check", "run a seeded verification sweep");
    std::string chk_kind;
    SweepConfig cfg;
    chk->add_option("kind", chk_kind, "tensor|subgroup|induction|chouinard|bgg|oracle")->required();
    chk->add_option("--p", cfg.ps, "characteristics (repeatable)");
    chk->add_option("--r", cfg.rs, "ranks (repeatable)");
    chk->add_option("--trials", cfg.trials, "trials per cell");
    chk->add_option("--seed", cfg.seed, "root seed");
    chk->add_option("--max-dim", cfg.max_dim, "max module dimension");
    chk->add_option("--hopf", cfg.hopf, "group|lie");
    chk->add_option("--window", cfg.window, "bgg window LO..HI");
    chk->add_option("--m", cfg.jm, "bgg truncation bound");
    chk->add_option("--out", cfg.out_path, "output path (default stdout)");

    // random
    auto* rnd = app.add_subcommand("random", "emit a deterministic random module");
    uint64_t rnd_seed = 1;
    int rnd_p = 2, rnd_r = 2, rnd_dim = 4;
    std::string rnd_out;
    rnd->add_option("--seed", rnd_seed, "seed")->required();
    rnd->add_option("--p", rnd_p, "characteristic")->required();
    rnd->add_option("--r", rnd_r, "rank")->required();
    rnd->add_option("--dim", rnd_dim, "max dimension")->required();
    rnd->add_option("--out", rnd_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sup->parsed()) {
            int D = 0;
            if (sup_D != "auto") {
                try {
                    D = std::stoi(sup_D);
                } catch (...) {
                    throw UsageError("--D must be an integer or 'auto'");
                }
                if (D < 1) throw UsageError("--D must be positive");
            }
            FdModule m;
            try {
                m = module_from_json(read_file(sup_input));
            } catch (const UsageError&) {
                throw;
            } catch (const std::exception& e) {
                throw UsageError(std::string("malformed module: ") + e.what());
            }
            SupportResult res = support_of_module(m, D);
            nlohmann::json out = nlohmann::json::parse(variety_to_json(res.variety));
            out["D"] = res.D_used;
            out["stable"] = res.stable;
            emit(sup_out, out.dump(2));
            return 0;
        }
        if (chk->parsed()) {
            for (int p : cfg.ps)
                if (!is_prime(p)) throw UsageError("--p must be prime");
            for (int r : cfg.rs)
                if (r < 1) throw UsageError("--r must be >= 1");
            if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
            if (cfg.max_dim < 1) throw UsageError("--max-dim must be >= 1");
            if (cfg.hopf != "group" && cfg.hopf != "lie") throw UsageError("--hopf must be group|lie");
            return run_check(chk_kind, cfg);
        }
        if (rnd->parsed()) {
            if (!is_prime(rnd_p) || rnd_r < 1 || rnd_dim < 1) throw UsageError("bad random parameters");
            FdModule m = random_module(Rng(rnd_seed), rnd_p, rnd_r, rnd_dim);
            emit(rnd_out, module_to_json(m));
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
