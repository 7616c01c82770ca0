#include "bicross/cli.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "bicross/bicrossproduct.hpp"
#include "bicross/errors.hpp"
#include "bicross/json_io.hpp"
#include "bicross/quantum_double.hpp"
#include "bicross/representations.hpp"
#include "bicross/twisting.hpp"

namespace bicross::cli {

namespace {

using json = json_io::json;

struct Session {
    RunConfig cfg;
    std::string command;
    FiniteGroup X;
    std::vector<std::pair<Subgroup, Subgroup>> facs;
    std::size_t factor = 0;
    std::vector<Report> reports;
    json results = json::object();

    MatchedPair mp(std::size_t i) const { return derive_matched_pair(X, facs[i].first, facs[i].second); }
    void add(Report r, const std::string& prefix = {}) {
        if (!prefix.empty()) r.title = prefix + r.title;
        reports.push_back(std::move(r));
    }
    void add(const std::string& title, CheckResult c) {
        Report r;
        r.title = title;
        r.add(c);
        reports.push_back(std::move(r));
    }
    bool passed() const {
        for (const auto& r : reports)
            if (!r.passed()) return false;
        return true;
    }
    std::filesystem::path path(const std::string& name) const {
        std::filesystem::create_directories(cfg.output_dir);
        return std::filesystem::path(cfg.output_dir) / name;
    }
    void write(const std::string& name, const json& j) const {
        const auto p = path(name);
        std::ofstream out(p);
        if (!out) throw SpecError("cannot write " + p.string());
        out << j.dump(1) << '\n';
    }
};

Report single(const std::string& title, CheckResult c) {
    Report r;
    r.title = title;
    r.add(std::move(c));
    return r;
}

CheckResult same_maps(const std::string& name, const LinearMap& a, const LinearMap& b) {
    CheckResult c{name, a == b, std::nullopt, a.cols(), false, {}};
    if (!c.passed) {
        for (std::size_t j = 0; j < std::min(a.cols(), b.cols()); ++j)
            if (!(a.column(j) == b.column(j))) {
                c.counterexample = Counterexample{{j}, truncated(a.column(j)), truncated(b.column(j))};
                break;
            }
        if (!c.counterexample) c.counterexample = Counterexample{{}, "shape differs", "shape differs"};
    }
    return c;
}

bool is_cyclic_of_order(const FiniteGroup& x, const Subgroup& s, int n) {
    return s.order() == n && !cyclic_labels(x, s).empty();
}

// Matched-pair laws and the axioms of H; false when downstream work should stop.
bool prerequisites(Session& S, const MatchedPair& mp, const HopfAlgebraData& H) {
    if (S.cfg.no_verify) return true;
    Report a = verify_matched_pair(mp);
    Report b = verify_hopf_axioms(H, S.cfg.opt);
    const bool ok = a.passed() && b.passed();
    S.add(std::move(a), "prerequisite: ");
    S.add(std::move(b), "prerequisite: ");
    return ok;
}

void cmd_factorize(Session& S) {
    json list = json::array();
    for (std::size_t i = 0; i < S.facs.size(); ++i) {
        const auto& [g, m] = S.facs[i];
        list.push_back(json{{"index", i},
                            {"orderG", g.order()},
                            {"orderM", m.order()},
                            {"G", g.elements},
                            {"M", m.elements},
                            {"cyclicG", !cyclic_labels(S.X, g).empty()},
                            {"cyclicM", !cyclic_labels(S.X, m).empty()}});
        std::cout << "  #" << i << "  |G|=" << g.order() << " |M|=" << m.order() << "\n";
    }
    S.results["factorizations"] = std::move(list);
    try {
        const std::size_t z = resolve_factor(S.X, S.facs, "z6z6");
        S.results["aliases"] = json{{"z6z6", z}};
        std::cout << "  z6z6 -> #" << z << "\n";
    } catch (const FactorizationError&) {
    }
    std::cout << S.facs.size() << " exact factorizations\n";
}

void check_factorization(Session& S, std::size_t i) {
    const std::string pre = "[" + std::to_string(i) + "] ";
    const MatchedPair mp = S.mp(i);
    const auto& opt = S.cfg.opt;
    S.add(verify_matched_pair(mp), pre);
    const HopfAlgebraData H = build_H(mp), Hd = build_Hdual(mp);
    const HopfAlgebraData DH = build_double_bicross(mp);
    for (const HopfAlgebraData* h : {&H, &Hd, &DH}) {
        Report r = verify_hopf_axioms(*h, opt);
        r.add(verify_antipode_involutive(*h));
        S.add(std::move(r), pre);
    }
    if (H.star) S.add(verify_star(H), pre);
    {
        const std::string diff = structure_diff(DH, build_double_general(H));
        CheckResult c{"bicross construction = general construction", diff.empty(), std::nullopt, DH.dim, false, {}};
        if (!diff.empty()) c.counterexample = Counterexample{{}, diff, "equal structure maps"};
        S.add(single("double agreement", c), pre);
    }
    if (mp.nG() != mp.nM()) {
        const auto rev = find_factor_reversing(mp, opt.workers);
        CheckResult c{"no factor-reversing automorphism when |G| != |M|", rev.empty(), std::nullopt, 1, false, {}};
        if (!rev.empty())
            c.counterexample = Counterexample{{}, std::to_string(rev.size()) + " automorphisms", "0 automorphisms"};
        S.add(single("order obstruction", c), pre);
    }
}

void cmd_check(Session& S, bool all_factorizations) {
    const GroupDouble gd = build_group_double(S.X);
    Report r = verify_hopf_axioms(gd.algebra, S.cfg.opt);
    r.add(verify_antipode_involutive(gd.algebra));
    S.add(std::move(r));
    if (all_factorizations) {
        for (std::size_t i = 0; i < S.facs.size(); ++i) check_factorization(S, i);
    } else {
        check_factorization(S, S.factor);
    }
}

void cmd_selfdual(Session& S, bool export_pairing) {
    const MatchedPair mp = S.mp(S.factor);
    const HopfAlgebraData H = build_H(mp), Hd = build_Hdual(mp);
    if (!prerequisites(S, mp, H)) return;
    const auto rev = find_factor_reversing(mp, S.cfg.opt.workers);
    const auto both = find_factor_preserving_or_reversing(mp, S.cfg.opt.workers);
    S.results["factor_reversing"] = rev.size();
    S.results["factor_preserving_or_reversing"] = both.size();
    std::cout << "factor-reversing automorphisms: " << rev.size() << "\n"
              << "factor-preserving or reversing: " << both.size() << "\n";
    json pairings = json::array();
    std::set<std::vector<std::tuple<std::size_t, std::size_t, Rational>>> distinct;
    for (std::size_t k = 0; k < rev.size(); ++k) {
        const std::string pre = "theta[" + std::to_string(k) + "] ";
        const LinearMap tt = theta_tilde(mp, rev[k]);
        S.add(verify_hopf_morphism(H, Hd, tt, false, S.cfg.opt), pre + "H -> H*: ");
        const LinearMap pairing = duality_pairing(mp, rev[k]);
        S.add(verify_pairing(H, pairing), pre);
        auto ent = pairing.entries();
        distinct.insert(ent);
        if (export_pairing) pairings.push_back(json_io::matrix_to_json(pairing));
        CheckResult c{"converse reconstruction returns theta", false, std::nullopt, 1, false, {}};
        if (auto perm = tt.as_permutation()) {
            const ConverseResult cr = basis_selfduality_converse_check(mp, H, Hd, *perm);
            c.passed = cr.theta && *cr.theta == rev[k];
            if (!c.passed)
                c.counterexample = cr.counterexample
                                       ? *cr.counterexample
                                       : Counterexample{{}, cr.failed_step.empty() ? "different theta" : cr.failed_step,
                                                        "theta"};
        } else {
            c.counterexample = Counterexample{{}, "theta~ is not a basis map", "basis map"};
        }
        S.add(single(pre + "converse", c));
    }
    S.results["distinct_pairings"] = distinct.size();
    if (export_pairing) {
        S.write("pairings.json", pairings);
        std::cout << "wrote " << S.path("pairings.json").string() << "\n";
    }
}

void cmd_double(Session& S, const std::string& method, bool do_export, bool r_element) {
    const MatchedPair mp = S.mp(S.factor);
    const HopfAlgebraData H = build_H(mp);
    if (!prerequisites(S, mp, H)) return;
    std::optional<HopfAlgebraData> general, bicross;
    if (method != "bicross") general = build_double_general(H);
    if (method != "general") bicross = build_double_bicross(mp);
    const HopfAlgebraData& D = bicross ? *bicross : *general;
    for (const auto* d : {general ? &*general : nullptr, bicross ? &*bicross : nullptr})
        if (d) S.add(verify_hopf_axioms(*d, S.cfg.opt), method == "both" ? (d == &*general ? "general: " : "bicross: ") : "");
    if (general && bicross) {
        const std::string diff = structure_diff(*bicross, *general);
        CheckResult c{"bicross construction = general construction", diff.empty(), std::nullopt, D.dim, false, {}};
        if (!diff.empty()) c.counterexample = Counterexample{{}, diff, "equal structure maps"};
        S.add(single("double agreement", c));
    }
    const TensorElement R = double_R(D);
    S.add(verify_quasitriangular(D, R, S.cfg.opt));
    S.results["dim"] = D.dim;
    if (do_export) {
        S.write("double.json", json_io::hopf_to_json(D));
        std::cout << "wrote " << S.path("double.json").string() << "\n";
    }
    if (r_element) {
        S.write("R.json", json_io::element_to_json(R, D.dim));
        std::cout << "wrote " << S.path("R.json").string() << "\n";
    }
}

struct BraidingFlags {
    bool minpoly = false, ybe = false, cycles = false, do_export = false, block = false;
};

void cmd_braiding(Session& S, BraidingFlags f) {
    const MatchedPair mp = S.mp(S.factor);
    const HopfAlgebraData H = build_H(mp);
    if (!prerequisites(S, mp, H)) return;
    if (!f.minpoly && !f.ybe && !f.cycles && !f.do_export && !f.block) f.minpoly = f.cycles = true;
    const BicrossedBimodule W = schrodinger_module(mp);
    const LinearMap psi = braiding(mp, W, W);
    S.add(single("braiding", same_maps("Psi = sum h1 g Sh2 (x) h3", psi, canonical_braiding(H))));
    if (f.minpoly) {
        const Polynomial p = minimal_polynomial(psi);
        S.results["minpoly"] = json_io::polynomial_to_json(p);
        std::cout << "minimal polynomial: " << p.str() << "\n";
    }
    if (f.cycles) {
        json hist = json::object();
        for (const auto& [len, count] : cycle_histogram(cycle_structure(psi))) hist[std::to_string(len)] = count;
        std::cout << "cycle lengths: " << hist.dump() << "\n";
        S.results["cycles"] = std::move(hist);
    }
    if (f.ybe) S.add(ybe_check(psi, S.cfg.opt.workers));
    if (f.block) {
        const LinearMap shift = block_shift(mp, psi);
        const Polynomial p = minimal_polynomial(shift);
        json orders = json::array();
        for (int s = 0; s < mp.nM(); ++s)
            for (int t = 0; t < mp.nM(); ++t) orders.push_back(json::array({s, t, block_order(mp, shift, s, t)}));
        S.results["block_shift"] = json{{"minpoly", json_io::polynomial_to_json(p)}, {"orders", std::move(orders)}};
        std::cout << "block shift minimal polynomial: " << p.str() << "\n";
    }
    if (f.do_export) {
        S.write("braiding.json", json_io::matrix_to_json(psi));
        std::cout << "wrote " << S.path("braiding.json").string() << "\n";
    }
}

void module_checks(Session& S, const MatchedPair& mp, const BicrossedBimodule& w, const std::string& pre) {
    const DXModule chi = chi_to_DX(mp, w);
    S.add(verify_dx_module(mp.X, chi), pre + "chi: ");
    {
        const BicrossedBimodule back = chi_from_DX(mp, chi);
        CheckResult c{"chi^-1(chi(W)) = W", back == w, std::nullopt, w.dim, false, {}};
        if (!c.passed) c.counterexample = Counterexample{{}, "module differs", "same module"};
        S.add(single(pre + "chi round trip", c));
    }
    S.add(verify_c_map(mp, w, w), pre);
    S.add(single(pre + "braiding naturality", verify_braiding_naturality(mp, w, w)));
    S.add(single(pre + "c coherence", verify_c_coherence(mp, w, w, w)));
}

void cmd_modules(Session& S, const std::string& module_file) {
    const MatchedPair mp = S.mp(S.factor);
    const HopfAlgebraData H = build_H(mp);
    if (!prerequisites(S, mp, H)) return;
    if (!module_file.empty()) {
        std::ifstream in(module_file);
        if (!in) throw SpecError("cannot read " + module_file);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw SpecError("cannot parse " + module_file + ": " + e.what());
        }
        const BicrossedBimodule w = json_io::module_from_json(j);
        Report r = verify_bicrossed_bimodule(mp, w);
        const bool ok = r.passed();
        S.add(std::move(r));
        if (!ok) return;
        S.add(verify_algebra_action(build_double_bicross(mp), induced_action(mp, w), S.cfg.opt), "module: ");
        module_checks(S, mp, w, "module ");
        return;
    }
    const BicrossedBimodule W = schrodinger_module(mp);
    S.add(verify_schrodinger(mp, S.cfg.opt));
    {
        const BicrossedBimodule back = module_from_double_action(mp, induced_action(mp, W));
        CheckResult c{"module_from_double_action(induced_action(W)) = W", back == W, std::nullopt, W.dim, false, {}};
        if (!c.passed) c.counterexample = Counterexample{{}, "module differs", "Schrodinger module"};
        S.add(single("Schrodinger round trip", c));
    }
    module_checks(S, mp, W, "Schrodinger ");
}

void cmd_twist(Session& S, bool export_f) {
    const MatchedPair mp = S.mp(S.factor);
    const HopfAlgebraData H = build_H(mp);
    if (!prerequisites(S, mp, H)) return;
    const GroupDouble gd = build_group_double(mp.X);
    const TensorElement F = cocycle_F(mp), Finv = cocycle_F_inverse(mp);
    S.add(verify_2cocycle(gd.algebra, F, &Finv));
    S.add(verify_psi_iso(mp, S.cfg.opt));
    {
        Report r;
        r.title = "chi and psi";
        r.add(verify_psi_chi(mp, schrodinger_module(mp)));
        if (mp.X.order() <= 12) r.add(verify_psi_chi_regular(mp));
        S.add(std::move(r));
    }
    S.add(twisted_coproduct_check(mp, S.cfg.opt));
    S.add(quasitriangular_transport_check(mp));
    try {
        if (mp.X.order() <= 8) {
            S.add(coboundary_obstruction_check(mp));
        } else {
            Report r;
            r.title = "non-coboundary";
            r.add("support enumeration", true, 0).note = "skipped: enumeration runs for |X| <= 8";
            S.add(std::move(r));
        }
    } catch (const ObstructionVacuous& e) {
        Report r;
        r.title = "non-coboundary";
        r.add("obstruction applies", true, 0).note = std::string("not applicable: ") + e.what();
        S.add(std::move(r));
    }
    if (export_f) {
        S.write("F.json", json_io::element_to_json(F, gd.algebra.dim));
        std::cout << "wrote " << S.path("F.json").string() << "\n";
    }
}

void print_summary(const Session& S) {
    std::size_t failed = 0, total = 0;
    for (const auto& r : S.reports) {
        std::size_t bad = 0;
        for (const auto& c : r.checks) bad += c.passed ? 0 : 1;
        total += r.checks.size();
        failed += bad;
        if (S.cfg.quiet && !bad) continue;
        std::cout << (bad ? "FAIL " : "ok   ") << r.title << "  (" << r.checks.size() - bad << "/" << r.checks.size()
                  << ")\n";
        for (const auto& c : r.checks) {
            if (c.passed) continue;
            std::cout << "     x " << c.name;
            if (c.counterexample) std::cout << ": " << c.counterexample->lhs << " vs " << c.counterexample->rhs;
            std::cout << "\n";
        }
    }
    std::cout << (failed ? "FAILED " : "PASSED ") << total - failed << "/" << total << " checks\n";
}

}  // namespace

std::size_t resolve_factor(const FiniteGroup& x, const std::vector<std::pair<Subgroup, Subgroup>>& facs,
                           const std::string& selector) {
    if (selector.empty()) {
        if (facs.empty()) throw FactorizationError("no exact factorization");
        return 0;
    }
    if (selector == "z6z6") {
        for (std::size_t i = 0; i < facs.size(); ++i)
            if (is_cyclic_of_order(x, facs[i].first, 6) && is_cyclic_of_order(x, facs[i].second, 6)) return i;
        throw FactorizationError("no factorization into two cyclic groups of order 6");
    }
    if (std::all_of(selector.begin(), selector.end(), [](unsigned char c) { return std::isdigit(c); })) {
        const std::size_t i = std::stoul(selector);
        if (i >= facs.size())
            throw FactorizationError("factorization index " + selector + " out of range (" +
                                     std::to_string(facs.size()) + " available)");
        return i;
    }
    throw FactorizationError("unknown factor selector '" + selector + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Bicrossproduct Hopf algebras of factorised groups, their doubles and braidings"};
    app.require_subcommand(1, 1);
    RunConfig cfg;
    app.add_option("--group", cfg.group_spec, "builtin spec (cyclic:n, dihedral:n, sym:n, product:a,b) or group JSON")
        ->required();
    app.add_option("--factor", cfg.factor, "factorization index from `factorize`, or z6z6");
    app.add_option("--exhaustive-cap", cfg.opt.exhaustive_cap, "dimension above which tuple sweeps sample")
        ->check(CLI::PositiveNumber);
    app.add_option("--sample-size", cfg.opt.sample_size, "tuples per sampled sweep")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.opt.seed, "sampling seed");
    app.add_option("--workers", cfg.opt.workers, "worker threads")->envname("BICROSS_WORKERS")->check(CLI::PositiveNumber);
    app.add_option("--output-dir", cfg.output_dir, "directory for reports and exports")->envname("BICROSS_OUTPUT_DIR");
    app.add_flag("--no-verify", cfg.no_verify, "skip prerequisite axiom checks");
    app.add_flag("--quiet", cfg.quiet, "summarize only failing reports");

    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    auto* factorize = sub("factorize", "list exact factorizations X = GM");
    auto* build = sub("build", "build H and H* and export them");
    auto* check = sub("check", "matched-pair laws, Hopf axioms, double agreement, order obstruction");
    bool all_facs = false;
    check->add_flag("--all-factorizations", all_facs, "sweep every factorization");
    auto* selfdual = sub("selfdual", "factor-reversing automorphisms and self-duality pairings");
    bool export_pairing = false;
    selfdual->add_flag("--export-pairing", export_pairing, "write the pairings as matrix JSON");
    auto* dbl = sub("double", "quantum double D(H)");
    std::string method = "both";
    bool dbl_export = false, r_element = false;
    dbl->add_option("--method", method, "general | bicross | both")
        ->check(CLI::IsMember({"general", "bicross", "both"}));
    dbl->add_flag("--export", dbl_export, "write D(H) as Hopf JSON");
    dbl->add_flag("--r-element", r_element, "write R as sparse element JSON");
    auto* braid = sub("braiding", "braiding of the Schrodinger module");
    BraidingFlags bf;
    braid->add_flag("--minpoly", bf.minpoly, "minimal polynomial");
    braid->add_flag("--ybe", bf.ybe, "Yang-Baxter check");
    braid->add_flag("--cycles", bf.cycles, "cycle structure");
    braid->add_flag("--export", bf.do_export, "write Psi as matrix JSON");
    braid->add_flag("--block-shift", bf.block, "shift map on M-label blocks");
    auto* modules = sub("modules", "bimodule conditions, chi and c checks");
    std::string module_file;
    modules->add_option("--module", module_file, "module JSON to verify instead of the Schrodinger module");
    auto* twist = sub("twist-check", "cocycle F, psi, twisted coproduct, quasitriangular transport, obstruction");
    bool export_f = false;
    twist->add_flag("--export-F", export_f, "write F as sparse element JSON");
    auto* all = sub("all", "every check");
    bool build_export = false;
    build->add_flag("--export", build_export, "write H, H* and the matched pair as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Session S;
    S.cfg = cfg;
    try {
        S.X = json_io::load_group(cfg.group_spec);
        S.facs = exact_factorizations(S.X, cfg.opt.workers);
        S.factor = resolve_factor(S.X, S.facs, cfg.factor);
        S.command = app.get_subcommands().front()->get_name();
        if (!cfg.quiet) {
            std::cout << S.X.name() << " (order " << S.X.order() << ")";
            if (S.command != "factorize" && !(S.command == "check" && all_facs)) {
                const auto& [g, m] = S.facs[S.factor];
                std::cout << ", factorization #" << S.factor << " |G|=" << g.order() << " |M|=" << m.order();
            }
            std::cout << "\n";
        }

        if (factorize->parsed()) {
            cmd_factorize(S);
        } else if (build->parsed()) {
            const MatchedPair mp = S.mp(S.factor);
            const HopfAlgebraData H = build_H(mp), Hd = build_Hdual(mp);
            S.add(verify_matched_pair(mp));
            S.add(verify_hopf_axioms(H, cfg.opt));
            S.add(verify_hopf_axioms(Hd, cfg.opt));
            if (build_export) {
                S.write("matched_pair.json", json_io::matched_pair_to_json(mp));
                S.write("group.json", json_io::group_to_json(S.X));
                S.write("H.json", json_io::hopf_to_json(H));
                S.write("Hdual.json", json_io::hopf_to_json(Hd));
                std::cout << "wrote H.json, Hdual.json, matched_pair.json, group.json to " << cfg.output_dir << "\n";
            }
        } else if (check->parsed()) {
            cmd_check(S, all_facs);
        } else if (selfdual->parsed()) {
            cmd_selfdual(S, export_pairing);
        } else if (dbl->parsed()) {
            cmd_double(S, method, dbl_export, r_element);
        } else if (braid->parsed()) {
            cmd_braiding(S, bf);
        } else if (modules->parsed()) {
            cmd_modules(S, module_file);
        } else if (twist->parsed()) {
            cmd_twist(S, export_f);
        } else if (all->parsed()) {
            cmd_check(S, false);
            cmd_selfdual(S, false);
            cmd_double(S, "both", false, false);
            cmd_braiding(S, {true, true, true, false, true});
            cmd_modules(S, "");
            cmd_twist(S, false);
        }

        json out{{"command", S.command},
                 {"config",
                  {{"group", cfg.group_spec},
                   {"factor", (S.command == "check" && all_facs) ? json(nullptr) : json(S.factor)},
                   {"exhaustive_cap", cfg.opt.exhaustive_cap},
                   {"sample_size", cfg.opt.sample_size},
                   {"seed", cfg.opt.seed}}},
                 {"results", S.results},
                 {"reports", json::array()},
                 {"passed", S.passed()}};
        for (const auto& r : S.reports) out["reports"].push_back(json_io::report_to_json(r));
        S.write(S.command + ".json", out);
        print_summary(S);
        if (!cfg.quiet) std::cout << "report: " << S.path(S.command + ".json").string() << "\n";
        return S.passed() ? 0 : 1;
    } catch (const SpecError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const FactorizationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const OrderCapExceeded& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace bicross::cli
