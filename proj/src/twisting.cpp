#include "bicross/twisting.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "bicross/bicrossproduct.hpp"
#include "bicross/errors.hpp"
#include "bicross/parallel.hpp"
#include "bicross/quantum_double.hpp"

namespace bicross {

namespace {

using u64 = std::uint64_t;

SparseVec sorted_units(std::vector<Key> keys) {
    std::sort(keys.begin(), keys.end());
    std::vector<Term> terms;
    terms.reserve(keys.size());
    for (Key k : keys) {
        if (!terms.empty() && terms.back().key == k)
            terms.back().coef += 1;
        else
            terms.push_back({k, 1});
    }
    return SparseVec(std::move(terms));
}

TensorElement build_F(const MatchedPair& mp, bool inverse) {
    const FiniteGroup& X = mp.X;
    const std::size_t n = X.order(), D = n * n;
    std::vector<Key> keys;
    keys.reserve(D * mp.nM() * mp.nG());
    for (std::size_t x = 0; x < n; ++x)
        for (int t = 0; t < mp.nM(); ++t) {
            const std::size_t y = inverse ? mp.mx(t) : mp.mx(mp.minv(t));
            for (int v = 0; v < mp.nG(); ++v) {
                const std::size_t tv = X.mul(mp.mx(t), mp.gx(v));
                keys.push_back((x * n + y) * D + tv * n);
            }
        }
    return {2, sorted_units(std::move(keys))};
}

std::optional<Counterexample> vec_diff(const SparseVec& a, const SparseVec& b, std::vector<u64> idx) {
    if (a == b) return std::nullopt;
    return Counterexample{std::move(idx), truncated(a), truncated(b)};
}

void compare(Report& rep, const std::string& name, const SparseVec& a, const SparseVec& b, u64 cases = 1) {
    if (auto cx = vec_diff(a, b, {}))
        rep.fail(name, *cx, cases);
    else
        rep.add(name, true, cases);
}

// Shared structures for the ψ-related checks.
struct Bridge {
    HopfAlgebraData dh;
    GroupDouble gd;
    LinearMap psi, psi_inv;
};

Bridge make_bridge(const MatchedPair& mp) {
    Bridge b{build_double_bicross(mp), build_group_double(mp.X), {}, {}};
    std::tie(b.psi, b.psi_inv) = psi_iso(mp);
    return b;
}

// ψ⁻¹ images for the inverse formula; `displayed` toggles the two inverted components.
LinearMap psi_inverse_impl(const MatchedPair& mp, bool displayed) {
    const std::size_t n = mp.X.order(), d = static_cast<std::size_t>(mp.nM()) * mp.nG();
    std::vector<std::size_t> perm(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto [s, u] = mp.split_mg(static_cast<int>(x));
            auto [t, v] = mp.split_mg(static_cast<int>(y));
            const int tv = mp.lt(t, v);
            const int alpha = mp.lt(mp.minv(t), mp.gmul(mp.ginv(u), mp.lt(mp.mmul(mp.minv(s), t), v)));
            int s1 = mp.rt(mp.minv(s), tv);
            const int u1 = mp.ginv(tv);
            const int t1 = mp.rt(t, mp.gmul(mp.gmul(v, mp.ginv(alpha)), v));
            int v1 = mp.gmul(mp.ginv(alpha), v);
            if (displayed) {
                s1 = mp.minv(s1);
                v1 = mp.gmul(mp.ginv(v), alpha);
            }
            perm[x * n + y] = bicross_index(mp, s1, u1) * d + bicross_index(mp, t1, v1);
        }
    return LinearMap::from_permutation(perm);
}

std::optional<Counterexample> identity_diff(const LinearMap& m) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!(m.column(j) == SparseVec::unit(j)))
            return Counterexample{{j}, truncated(m.column(j)), truncated(SparseVec::unit(j))};
    return std::nullopt;
}

void check_inverse_pair(Report& rep, const std::string& tag, const LinearMap& psi, const LinearMap& inv) {
    const std::string a = "psi o " + tag + " = id", b = tag + " o psi = id";
    if (auto cx = identity_diff(compose(psi, inv)))
        rep.fail(a, *cx, psi.rows());
    else
        rep.add(a, true, psi.rows());
    if (auto cx = identity_diff(compose(inv, psi)))
        rep.fail(b, *cx, psi.cols());
    else
        rep.add(b, true, psi.cols());
}

TensorElement swap2(const TensorElement& x, std::size_t dim) { return permute_slots(x, {1, 0}, dim); }

// Σ m(f1 ⊗ g(f2)) over the terms of a rank-2 element.
SparseVec contract(const HopfAlgebraData& a, const TensorElement& f, const LinearMap* first, const LinearMap* second) {
    Accumulator acc;
    for (const auto& t : f.v) {
        const std::size_t i = t.key / a.dim, j = t.key % a.dim;
        SparseVec l = first ? first->column(i) : SparseVec::unit(i);
        SparseVec r = second ? second->column(j) : SparseVec::unit(j);
        SparseVec p = a.multiply(l, r);
        acc.add(p, t.coef);
    }
    return acc.take();
}

}  // namespace

TensorElement cocycle_F(const MatchedPair& mp) { return build_F(mp, false); }
TensorElement cocycle_F_inverse(const MatchedPair& mp) { return build_F(mp, true); }

Report verify_2cocycle(const HopfAlgebraData& dx, const TensorElement& f, const TensorElement* f_inverse) {
    Report rep;
    rep.title = "2-cocycle: " + dx.name;
    if (f.rank != 2) throw ShapeError("a 2-cocycle lives in A⊗A");
    const TensorElement one1 = tensor_one(dx, 1);
    const TensorElement lhs = multiply(dx, tensor_product(one1, f, dx.dim), apply_delta(dx, f, 1));
    const TensorElement rhs = multiply(dx, tensor_product(f, one1, dx.dim), apply_delta(dx, f, 0));
    compare(rep, "(1(x)F)(id(x)D)F = (F(x)1)(D(x)id)F", lhs.v, rhs.v, f.v.size());
    const TensorElement one2 = tensor_one(dx, 2);
    if (f_inverse) {
        compare(rep, "F F^-1 = 1(x)1", multiply(dx, f, *f_inverse).v, one2.v);
        compare(rep, "F^-1 F = 1(x)1", multiply(dx, *f_inverse, f).v, one2.v);
    }
    // Counit normalisation (ε⊗id)F = 1 = (id⊗ε)F.
    Accumulator l, r;
    for (const auto& t : f.v) {
        const std::size_t i = t.key / dx.dim, j = t.key % dx.dim;
        l.add(j, t.coef * dx.counit[i]);
        r.add(i, t.coef * dx.counit[j]);
    }
    SparseVec lv = l.take(), rv = r.take();
    const bool ok = lv == dx.unit && rv == dx.unit;
    if (ok)
        rep.add("(e(x)id)F = (id(x)e)F = 1", true);
    else
        rep.fail("(e(x)id)F = (id(x)e)F = 1", {{}, truncated(lv) + " | " + truncated(rv), truncated(dx.unit)});
    return rep;
}

std::pair<LinearMap, LinearMap> psi_iso(const MatchedPair& mp) {
    const FiniteGroup& X = mp.X;
    const std::size_t n = X.order(), d = static_cast<std::size_t>(mp.nM()) * mp.nG();
    std::vector<std::size_t> perm(d * d);
    for (int s = 0; s < mp.nM(); ++s)
        for (int u = 0; u < mp.nG(); ++u)
            for (int t = 0; t < mp.nM(); ++t)
                for (int v = 0; v < mp.nG(); ++v) {
                    const int ui = X.inv(mp.gx(u));
                    const int x = X.mul(X.mul(X.mul(ui, X.inv(mp.mx(s))), mp.gx(mp.lt(t, v))), mp.gx(u));
                    const int y = X.mul(ui, mp.mx(mp.rt(t, v)));
                    perm[bicross_index(mp, s, u) * d + bicross_index(mp, t, v)] = static_cast<std::size_t>(x) * n + y;
                }
    return {LinearMap::from_permutation(perm), psi_inverse_impl(mp, false)};
}

LinearMap psi_inverse_displayed(const MatchedPair& mp) { return psi_inverse_impl(mp, true); }

Report verify_psi_iso(const MatchedPair& mp, const CheckOptions& opt) {
    Report rep;
    rep.title = "psi: D(H) -> D(X)";
    const Bridge b = make_bridge(mp);
    check_inverse_pair(rep, "psi^-1", b.psi, b.psi_inv);
    check_inverse_pair(rep, "displayed psi^-1", b.psi, psi_inverse_displayed(mp));

    const HopfAlgebraData& A = b.dh;
    const HopfAlgebraData& B = b.gd.algebra;
    compare(rep, "psi(1) = 1", apply(b.psi, A.unit), B.unit);
    const std::size_t D = A.dim;
    const bool sampled = D > opt.exhaustive_cap && D * D > opt.sample_size;
    const std::size_t count = sampled ? opt.sample_size : D * D;
    std::vector<std::size_t> picks;
    if (sampled) {
        std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
        picks.resize(count);
        for (auto& p : picks) p = rng() % (D * D);
    }
    auto fail = first_failure(count, opt.workers, [&](std::size_t k) -> std::optional<Counterexample> {
        const std::size_t p = sampled ? picks[k] : k;
        const std::size_t i = p / D, j = p % D;
        SparseVec l = apply(b.psi, A.product.row_vec(p));
        SparseVec r = B.multiply(b.psi.column(i), b.psi.column(j));
        return vec_diff(l, r, {i, j});
    });
    const std::string name = "psi(xy) = psi(x)psi(y)";
    if (fail)
        rep.fail(name, fail->second, fail->first + 1);
    else
        rep.add(name, true, count);
    rep.checks.back().sampled = sampled;
    return rep;
}

CheckResult verify_psi_chi(const MatchedPair& mp, const BicrossedBimodule& w) {
    CheckResult res{"chi((a(x)h)>w) = psi(a(x)h)>chi(w)", true, std::nullopt, 0, false, {}};
    const auto [psi, psi_inv] = psi_iso(mp);
    const std::vector<LinearMap> dh_act = induced_action(mp, w);
    const std::vector<LinearMap> dx_act = dx_induced_action(mp.X, chi_to_DX(mp, w));
    for (std::size_t k = 0; k < dh_act.size(); ++k) {
        const std::size_t img = psi.column(k).begin()->key;
        for (std::size_t j = 0; j < w.dim; ++j) {
            ++res.cases;
            if (!(dh_act[k].column(j) == dx_act[img].column(j))) {
                res.passed = false;
                res.counterexample = Counterexample{{k, j}, truncated(dh_act[k].column(j)),
                                                    truncated(dx_act[img].column(j))};
                return res;
            }
        }
    }
    return res;
}

CheckResult verify_psi_chi_regular(const MatchedPair& mp) {
    CheckResult res{"psi-pullback of regular D(X) = chi(regular D(H))", true, std::nullopt, 0, false, {}};
    const Bridge b = make_bridge(mp);
    const BicrossedBimodule reg = module_from_double_action(mp, left_regular_action(b.dh));
    // Runs in the homogeneous basis chosen by module_from_double_action, whose induced
    // action is the regular one up to that change of basis.
    const DXModule chi = chi_to_DX(mp, reg);
    const std::vector<LinearMap> dx_act = dx_induced_action(mp.X, chi);
    const std::vector<LinearMap> dh_act = induced_action(mp, reg);
    for (std::size_t xi = 0; xi < b.gd.algebra.dim; ++xi) {
        const std::size_t pre = b.psi_inv.column(xi).begin()->key;
        for (std::size_t j = 0; j < reg.dim; ++j) {
            ++res.cases;
            if (!(dh_act[pre].column(j) == dx_act[xi].column(j))) {
                res.passed = false;
                res.counterexample =
                    Counterexample{{xi, j}, truncated(dh_act[pre].column(j)), truncated(dx_act[xi].column(j))};
                return res;
            }
        }
    }
    return res;
}

Report twisted_coproduct_check(const MatchedPair& mp, const CheckOptions& opt) {
    Report rep;
    rep.title = "twisted coproduct";
    const Bridge b = make_bridge(mp);
    const HopfAlgebraData& DX = b.gd.algebra;
    const HopfAlgebraData& DH = b.dh;
    const TensorElement F = cocycle_F(mp), Finv = cocycle_F_inverse(mp);
    const std::size_t D = DX.dim;

    std::vector<SparseVec> twisted(D);
    auto fail = first_failure(D, opt.workers, [&](std::size_t h) -> std::optional<Counterexample> {
        const TensorElement dh{2, DX.comultiply(SparseVec::unit(h))};
        TensorElement lhs = multiply(DX, multiply(DX, F, dh), Finv);
        const TensorElement pre{2, DH.comultiply(b.psi_inv.column(h))};
        const TensorElement rhs = apply_each(b.psi, pre, DH.dim, D);
        auto cx = vec_diff(lhs.v, rhs.v, {h});
        twisted[h] = std::move(lhs.v);
        return cx;
    });
    const std::string name = "F D(h) F^-1 = (psi(x)psi) D psi^-1(h)";
    if (fail) {
        rep.fail(name, fail->second, fail->first + 1);
        return rep;
    }
    rep.add(name, true, D);

    // Transported Hopf structure on D(X).
    HopfAlgebraData T = DX;
    T.name = DX.name + "^F";
    T.star.reset();
    T.coproduct = SparseTensor();
    T.coproduct.reserve(D, 0);
    for (const auto& row : twisted) T.coproduct.push_row(row);
    const SparseVec U = contract(DX, F, nullptr, &DX.antipode);
    const SparseVec Uinv = contract(DX, Finv, &DX.antipode, nullptr);
    compare(rep, "U U^-1 = 1", DX.multiply(U, Uinv), DX.unit);
    compare(rep, "U^-1 U = 1", DX.multiply(Uinv, U), DX.unit);
    LinearMap S(D, D);
    for (std::size_t h = 0; h < D; ++h) S.set_column(h, DX.multiply(DX.multiply(U, DX.antipode.column(h)), Uinv));
    T.antipode = std::move(S);
    T.finalize();
    rep.absorb(verify_hopf_axioms(T, opt), "D(X)^F");
    rep.absorb(verify_hopf_morphism(DH, T, b.psi, false, opt), "psi: D(H) -> D(X)^F");
    return rep;
}

Report quasitriangular_transport_check(const MatchedPair& mp) {
    Report rep;
    rep.title = "quasitriangular transport";
    const Bridge b = make_bridge(mp);
    const HopfAlgebraData& DX = b.gd.algebra;
    const std::size_t D = DX.dim, n = mp.X.order();
    const TensorElement F = cocycle_F(mp), Finv = cocycle_F_inverse(mp);
    const TensorElement& R = b.gd.R;
    const TensorElement Rinv = apply_on_slot(DX.antipode, R, 0, D);
    compare(rep, "R (S(x)id)R = 1(x)1", multiply(DX, R, Rinv).v, tensor_one(DX, 2).v);

    const TensorElement lhs = multiply(DX, multiply(DX, swap2(F, D), swap2(Rinv, D)), Finv);
    const TensorElement pushed = apply_each(b.psi, double_R(b.dh), b.dh.dim, D);
    compare(rep, "(tF)(tR^-1)F^-1 = (psi(x)psi)R_D(H)", lhs.v, pushed.v, lhs.v.size());

    std::vector<Key> keys;
    const FiniteGroup& X = mp.X;
    for (int s = 0; s < mp.nM(); ++s)
        for (int t = 0; t < mp.nM(); ++t)
            for (int u = 0; u < mp.nG(); ++u)
                for (int v = 0; v < mp.nG(); ++v) {
                    const std::size_t a = X.mul(mp.mx(s), mp.gx(v)), h = mp.gx(mp.lt(s, u));
                    const std::size_t c = X.mul(mp.mx(t), mp.gx(mp.ginv(u))), k = mp.mx(mp.minv(s));
                    keys.push_back((a * n + h) * D + c * n + k);
                }
    compare(rep, "(psi(x)psi)R_D(H) = sum d_sv(x)(s>u)(x)d_tu^-1(x)s^-1", pushed.v, sorted_units(std::move(keys)),
            pushed.v.size());

    const TensorElement closing = multiply(DX, multiply(DX, multiply(DX, swap2(pushed, D), swap2(F, D)), R), Finv);
    compare(rep, "(t(psi(x)psi)R_D(H))(tF)RF^-1 = 1(x)1", closing.v, tensor_one(DX, 2).v);
    return rep;
}

namespace {

// Clause over boolean variables 0..N-1: OR of positive literals `pos` and negated `neg`.
struct Clause {
    std::vector<std::uint32_t> pos, neg;
};

// Enumerates every assignment satisfying all clauses, with unit propagation.
class SupportSolver {
public:
    SupportSolver(std::size_t n, std::vector<Clause> clauses) : n_(n), clauses_(std::move(clauses)) {}

    std::vector<std::vector<bool>> solve() {
        std::vector<signed char> val(n_, -1);
        models_.clear();
        search(val);
        return models_;
    }
    std::uint64_t nodes() const { return nodes_; }

private:
    // 1 satisfied, 0 conflict, -1 open; sets unit to the forced literal when exactly one is open.
    int status(const Clause& c, const std::vector<signed char>& val, long& unit) const {
        int open = 0;
        long last = 0;
        for (auto p : c.pos) {
            if (val[p] == 1) return 1;
            if (val[p] < 0) ++open, last = static_cast<long>(p) + 1;
        }
        for (auto q : c.neg) {
            if (val[q] == 0) return 1;
            if (val[q] < 0) ++open, last = -(static_cast<long>(q) + 1);
        }
        if (open == 0) return 0;
        unit = open == 1 ? last : 0;
        return -1;
    }

    bool propagate(std::vector<signed char>& val) const {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& c : clauses_) {
                long unit = 0;
                const int st = status(c, val, unit);
                if (st == 0) return false;
                if (st < 0 && unit != 0) {
                    if (unit > 0)
                        val[unit - 1] = 1;
                    else
                        val[-unit - 1] = 0;
                    changed = true;
                }
            }
        }
        return true;
    }

    void search(std::vector<signed char> val) {
        ++nodes_;
        if (!propagate(val)) return;
        const auto it = std::find(val.begin(), val.end(), static_cast<signed char>(-1));
        if (it == val.end()) {
            models_.emplace_back(val.begin(), val.end());
            return;
        }
        for (signed char choice : {0, 1}) {
            *it = choice;
            search(val);
        }
    }

    std::size_t n_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<bool>> models_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

Report coboundary_obstruction_check(const MatchedPair& mp) {
    if (mp.nG() == 1 || mp.nM() == 1)
        throw ObstructionVacuous("a trivial factor makes F a coboundary");
    Report rep;
    rep.title = "non-coboundary";
    const GroupDouble gd = build_group_double(mp.X);
    const HopfAlgebraData& DX = gd.algebra;
    const std::size_t N = DX.dim, n = mp.X.order();
    const TensorElement F = cocycle_F(mp);

    // γ⊗γ = F·Δγ, coefficient of e_A⊗e_B: γ_A γ_B = Σ_C L[A,B][C] γ_C.
    std::vector<std::vector<Term>> rhs(N * N);
    for (std::size_t c = 0; c < N; ++c) {
        const TensorElement img = multiply(DX, F, {2, DX.comultiply(SparseVec::unit(c))});
        for (const auto& t : img.v) rhs[t.key].push_back({c, t.coef});
    }
    std::vector<Clause> clauses;
    for (std::uint32_t a = 0; a < N; ++a)
        for (std::uint32_t bb = a; bb < N; ++bb) {
            // Equations for (A,B) and (B,A) share the left side.
            for (Key k : {static_cast<Key>(a) * N + bb, static_cast<Key>(bb) * N + a}) {
                const auto& r = rhs[k];
                Clause base;
                base.neg = a == bb ? std::vector<std::uint32_t>{a} : std::vector<std::uint32_t>{a, bb};
                if (r.empty()) {
                    clauses.push_back(base);
                } else {
                    Clause imp = base;
                    for (const auto& t : r) imp.pos.push_back(static_cast<std::uint32_t>(t.key));
                    clauses.push_back(std::move(imp));
                    if (r.size() == 1) {
                        const auto c = static_cast<std::uint32_t>(r.front().key);
                        clauses.push_back({{a}, {c}});
                        if (bb != a) clauses.push_back({{bb}, {c}});
                    }
                }
                if (a == bb) break;
            }
        }
    SupportSolver solver(N, clauses);
    const auto models = solver.solve();
    rep.add("support patterns enumerated", true, solver.nodes()).note =
        std::to_string(models.size()) + " patterns over " + std::to_string(N) + " coefficients, " +
        std::to_string(clauses.size()) + " clauses";

    if (N <= 20) {
        std::size_t brute = 0;
        bool same = true;
        std::vector<std::vector<bool>> found;
        for (u64 mask = 0; mask < (u64{1} << N); ++mask) {
            bool ok = true;
            for (const auto& c : clauses) {
                bool sat = false;
                for (auto p : c.pos) sat = sat || ((mask >> p) & 1u);
                for (auto q : c.neg) sat = sat || !((mask >> q) & 1u);
                if (!sat) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            ++brute;
            std::vector<bool> m(N);
            for (std::size_t i = 0; i < N; ++i) m[i] = (mask >> i) & 1u;
            found.push_back(std::move(m));
        }
        auto sorted = models;
        std::sort(sorted.begin(), sorted.end());
        std::sort(found.begin(), found.end());
        same = sorted == found;
        if (same)
            rep.add("propagation = brute force over all supports", true, u64{1} << N).note =
                std::to_string(brute) + " patterns";
        else
            rep.fail("propagation = brute force over all supports",
                     {{}, std::to_string(models.size()) + " patterns", std::to_string(brute) + " patterns"},
                     u64{1} << N);
    }

    // Support shape: γ_{x,y} ≠ 0 only for x ∈ G and one common y.
    for (std::size_t m = 0; m < models.size(); ++m) {
        long y0 = -1;
        for (std::size_t p = 0; p < N; ++p) {
            if (!models[m][p]) continue;
            const std::size_t x = p / n, y = p % n;
            const bool in_g = mp.G.contains(static_cast<int>(x));
            if (!in_g || (y0 >= 0 && static_cast<std::size_t>(y0) != y)) {
                rep.fail("support in span{d_u(x)x0 : u in G}",
                         {{m, p}, "d_" + std::to_string(x) + "(x)" + std::to_string(y),
                          y0 < 0 ? "x in G" : "y = " + std::to_string(y0)},
                         m + 1);
                return rep;
            }
            y0 = static_cast<long>(y);
        }
    }
    rep.add("support in span{d_u(x)x0 : u in G}", true, models.size());

    // Singularity: left multiplication by γ lands in the span of the rows reached from its support.
    std::size_t worst = 0;
    for (std::size_t m = 0; m < models.size(); ++m) {
        std::vector<bool> rows(N);
        for (std::size_t p = 0; p < N; ++p) {
            if (!models[m][p]) continue;
            for (std::size_t q = 0; q < N; ++q)
                for (const auto& t : DX.mul(p, q)) rows[t.key] = true;
        }
        const auto reach = static_cast<std::size_t>(std::count(rows.begin(), rows.end(), true));
        worst = std::max(worst, reach);
        if (reach >= N) {
            rep.fail("every pattern singular", {{m}, "image span " + std::to_string(reach), "< " + std::to_string(N)},
                     m + 1);
            return rep;
        }
    }
    rep.add("every pattern singular", true, models.size()).note =
        "left-multiplication rank <= " + std::to_string(worst) + " of " + std::to_string(N);
    return rep;
}

}  // namespace bicross
