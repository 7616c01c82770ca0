#include "bicross/bicrossproduct.hpp"

#include <algorithm>

#include "bicross/errors.hpp"

namespace bicross {

HopfAlgebraData build_H(const MatchedPair& mp) {
    const int nM = mp.nM(), nG = mp.nG();
    const std::size_t d = static_cast<std::size_t>(nM) * nG;
    auto idx = [&](int s, int u) { return bicross_index(mp, s, u); };
    HopfAlgebraData h;
    h.name = "H";
    h.dim = d;
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) h.labels.push_back({LabelKind::BicrossH, s, u});
    // (s⊗δ_u)(t⊗δ_v) = δ_{u,t▷v} st⊗δ_v
    h.product.reserve(d * d, d * nG);
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u)
            for (int t = 0; t < nM; ++t)
                for (int v = 0; v < nG; ++v)
                    h.product.push_row(u == mp.lt(t, v) ? SparseVec::unit(idx(mp.mmul(s, t), v)) : SparseVec{});
    std::vector<Term> unit;
    for (int u = 0; u < nG; ++u) unit.push_back({idx(0, u), 1});
    h.unit = SparseVec(std::move(unit));
    // Δ(s⊗δ_u) = Σ_{xy=u} s⊗δ_x ⊗ (s◁x)⊗δ_y
    Accumulator acc;
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) {
            for (int x = 0; x < nG; ++x) {
                int y = mp.gmul(mp.ginv(x), u);
                acc.add(idx(s, x) * d + idx(mp.rt(s, x), y), 1);
            }
            h.coproduct.push_row(acc.take());
        }
    h.counit.assign(d, 0);
    for (int s = 0; s < nM; ++s) h.counit[idx(s, 0)] = 1;
    // S(s⊗δ_u) = (s◁u)^{-1}⊗δ_{(s▷u)^{-1}},  (s⊗δ_u)* = s^{-1}⊗δ_{s▷u}
    std::vector<std::size_t> anti(d), star(d);
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) {
            anti[idx(s, u)] = idx(mp.minv(mp.rt(s, u)), mp.ginv(mp.lt(s, u)));
            star[idx(s, u)] = idx(mp.minv(s), mp.lt(s, u));
        }
    h.antipode = LinearMap::from_permutation(anti);
    h.star = LinearMap::from_permutation(star);
    h.finalize();
    return h;
}

HopfAlgebraData build_Hdual(const MatchedPair& mp) {
    const int nM = mp.nM(), nG = mp.nG();
    const std::size_t d = static_cast<std::size_t>(nM) * nG;
    auto idx = [&](int s, int u) { return bicross_index(mp, s, u); };
    HopfAlgebraData h;
    h.name = "H*";
    h.dim = d;
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) h.labels.push_back({LabelKind::BicrossDual, s, u});
    // (δ_s⊗u)(δ_t⊗v) = δ_{s◁u,t} δ_s⊗uv
    h.product.reserve(d * d, d * nG);
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u)
            for (int t = 0; t < nM; ++t)
                for (int v = 0; v < nG; ++v)
                    h.product.push_row(mp.rt(s, u) == t ? SparseVec::unit(idx(s, mp.gmul(u, v))) : SparseVec{});
    std::vector<Term> unit;
    for (int s = 0; s < nM; ++s) unit.push_back({idx(s, 0), 1});
    h.unit = SparseVec(std::move(unit));
    // Δ(δ_s⊗u) = Σ_{ab=s} δ_a⊗(b▷u) ⊗ δ_b⊗u
    Accumulator acc;
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) {
            for (int a = 0; a < nM; ++a) {
                int b = mp.mmul(mp.minv(a), s);
                acc.add(idx(a, mp.lt(b, u)) * d + idx(b, u), 1);
            }
            h.coproduct.push_row(acc.take());
        }
    h.counit.assign(d, 0);
    for (int u = 0; u < nG; ++u) h.counit[idx(0, u)] = 1;
    // S(δ_s⊗u) = δ_{(s◁u)^{-1}}⊗(s▷u)^{-1},  (δ_s⊗u)* = δ_{s◁u}⊗u^{-1}
    std::vector<std::size_t> anti(d), star(d);
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) {
            anti[idx(s, u)] = idx(mp.minv(mp.rt(s, u)), mp.ginv(mp.lt(s, u)));
            star[idx(s, u)] = idx(mp.rt(s, u), mp.ginv(u));
        }
    h.antipode = LinearMap::from_permutation(anti);
    h.star = LinearMap::from_permutation(star);
    h.finalize();
    return h;
}

namespace {

void require_reversing(const MatchedPair& mp, const GroupIsomorphism& theta) {
    if (!is_factor_reversing(mp, theta)) throw NotFactorReversing("θ is not a factor-reversing automorphism");
}

// (s,u) ↦ (θ(s▷u) as M-local, θ(s◁u) as G-local), the index map shared by all θ̃ variants.
std::vector<std::size_t> theta_index_map(const MatchedPair& mp, const GroupIsomorphism& theta) {
    std::vector<std::size_t> map(static_cast<std::size_t>(mp.nM()) * mp.nG());
    for (int s = 0; s < mp.nM(); ++s)
        for (int u = 0; u < mp.nG(); ++u) {
            int a = mp.M.local[theta(mp.gx(mp.lt(s, u)))];
            int b = mp.G.local[theta(mp.mx(mp.rt(s, u)))];
            map[bicross_index(mp, s, u)] = bicross_index(mp, a, b);
        }
    return map;
}

}  // namespace

LinearMap theta_tilde(const MatchedPair& mp, const GroupIsomorphism& theta) {
    require_reversing(mp, theta);
    return LinearMap::from_permutation(theta_index_map(mp, theta));
}

LinearMap theta_tilde_dual(const MatchedPair& mp, const GroupIsomorphism& theta) {
    require_reversing(mp, theta);
    return LinearMap::from_permutation(theta_index_map(mp, theta));
}

LinearMap theta_tilde_inverse(const MatchedPair& mp, const GroupIsomorphism& theta) {
    require_reversing(mp, theta);
    return LinearMap::from_permutation(theta_index_map(mp, inverse(theta)));
}

LinearMap duality_pairing(const MatchedPair& mp, const GroupIsomorphism& theta) {
    require_reversing(mp, theta);
    auto tt = theta_index_map(mp, theta);
    const std::size_t d = tt.size();
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
    for (std::size_t j = 0; j < d; ++j) entries.emplace_back(0, tt[j] * d + j, 1);
    return LinearMap::from_entries(1, d * d, entries);
}

Report verify_pairing(const HopfAlgebraData& h, const LinearMap& pairing) {
    const std::size_t d = h.dim;
    if (pairing.rows() != 1 || pairing.cols() != d * d) throw ShapeError("pairing must be a covector on H⊗H");
    std::vector<Rational> P(d * d);
    for (std::size_t k = 0; k < d * d; ++k) {
        const auto& c = pairing.column(k);
        if (!c.empty()) P[k] = c.terms().front().coef;
    }
    auto pv = [&](const SparseVec& x, std::size_t j) {
        Rational r;
        for (const auto& t : x) r += t.coef * P[t.key * d + j];
        return r;
    };
    Report rep;
    rep.title = "hopf pairing";
    auto sweep3 = [&](const std::string& name, auto&& f) {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                for (std::size_t c = 0; c < d; ++c) {
                    auto [l, r] = f(a, b, c);
                    if (!(l == r)) {
                        rep.fail(name, {{a, b, c}, l.str(), r.str()}, d * d * d);
                        return;
                    }
                }
        rep.add(name, true, d * d * d);
    };
    // ⟨ab, c⟩ = Σ⟨a,c1⟩⟨b,c2⟩
    sweep3("<ab,c>=<a,c1><b,c2>", [&](std::size_t a, std::size_t b, std::size_t c) {
        Rational l;
        for (const auto& t : h.mul(a, b)) l += t.coef * P[t.key * d + c];
        Rational r;
        for (const auto& t : h.delta(c)) r += t.coef * P[a * d + t.key / d] * P[b * d + t.key % d];
        return std::make_pair(l, r);
    });
    // ⟨a, bc⟩ = Σ⟨a1,b⟩⟨a2,c⟩
    sweep3("<a,bc>=<a1,b><a2,c>", [&](std::size_t a, std::size_t b, std::size_t c) {
        Rational l;
        for (const auto& t : h.mul(b, c)) l += t.coef * P[a * d + t.key];
        Rational r;
        for (const auto& t : h.delta(a)) r += t.coef * P[(t.key / d) * d + b] * P[(t.key % d) * d + c];
        return std::make_pair(l, r);
    });
    {
        bool ok = true;
        for (std::size_t a = 0; a < d && ok; ++a)
            for (std::size_t b = 0; b < d && ok; ++b) {
                Rational l = pv(h.antipode.column(a), b);
                Rational r;
                for (const auto& t : h.antipode.column(b)) r += t.coef * P[a * d + t.key];
                if (!(l == r)) {
                    rep.fail("<Sa,b>=<a,Sb>", {{a, b}, l.str(), r.str()}, d * d);
                    ok = false;
                }
            }
        if (ok) rep.add("<Sa,b>=<a,Sb>", true, d * d);
    }
    {
        bool ok = true;
        for (std::size_t x = 0; x < d && ok; ++x) {
            Rational l = pv(h.unit, x);
            Rational r;
            for (const auto& t : h.unit) r += t.coef * P[x * d + t.key];
            if (!(l == h.counit[x]) || !(r == h.counit[x])) {
                rep.fail("<1,h>=<h,1>=eps(h)", {{x}, l.str() + "," + r.str(), h.counit[x].str()}, d);
                ok = false;
            }
        }
        if (ok) rep.add("<1,h>=<h,1>=eps(h)", true, d);
    }
    {
        LinearMap m(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<Term> col;
            for (std::size_t i = 0; i < d; ++i)
                if (!P[i * d + j].is_zero()) col.push_back({i, P[i * d + j]});
            m.set_column(j, SparseVec(std::move(col)));
        }
        std::size_t r = rank(m);
        if (r == d) rep.add("nondegenerate", true, d);
        else rep.fail("nondegenerate", {{}, "rank " + std::to_string(r), "rank " + std::to_string(d)}, d);
    }
    return rep;
}

ConverseResult basis_selfduality_converse_check(const MatchedPair& mp, const HopfAlgebraData& H,
                                                const HopfAlgebraData& Hd, const std::vector<std::size_t>& phi) {
    const int nM = mp.nM(), nG = mp.nG();
    const std::size_t d = static_cast<std::size_t>(nM) * nG;
    if (phi.size() != d || H.dim != d || Hd.dim != d) throw ShapeError("φ must map the basis of H onto that of H*");
    std::vector<std::size_t> phinv(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (phi[i] >= d || phinv[phi[i]] != d) throw ShapeError("φ is not a basis bijection");
        phinv[phi[i]] = i;
    }
    ConverseResult res;
    auto fail = [&](std::string step, std::vector<std::uint64_t> idx, std::string l, std::string r) {
        res.failed_step = std::move(step);
        res.counterexample = Counterexample{std::move(idx), std::move(l), std::move(r)};
        return res;
    };
    // φ^{-1}(δ_s⊗u) = m(s,u)⊗δ_{g(s,u)}
    std::vector<int> m(d), g(d);
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) {
            std::size_t h = phinv[bicross_index(mp, s, u)];
            m[bicross_index(mp, s, u)] = static_cast<int>(h / nG);
            g[bicross_index(mp, s, u)] = static_cast<int>(h % nG);
        }
    auto M_ = [&](int s, int u) { return m[bicross_index(mp, s, u)]; };
    auto G_ = [&](int s, int u) { return g[bicross_index(mp, s, u)]; };
    // (e) t = s◁u  ⟺  (f) g(s,u) = m(t,v)▷g(t,v); when they hold, (g) and (h).
    for (int s = 0; s < nM; ++s)
        for (int t = 0; t < nM; ++t)
            for (int u = 0; u < nG; ++u)
                for (int v = 0; v < nG; ++v) {
                    std::vector<std::uint64_t> at{(std::uint64_t)s, (std::uint64_t)t, (std::uint64_t)u,
                                                  (std::uint64_t)v};
                    bool e = t == mp.rt(s, u);
                    bool f = G_(s, u) == mp.lt(M_(t, v), G_(t, v));
                    if (e != f) return fail("(e)<=>(f)", at, e ? "true" : "false", f ? "true" : "false");
                    if (!e) continue;
                    int uv = mp.gmul(u, v);
                    if (M_(s, uv) != mp.mmul(M_(s, u), M_(t, v)))
                        return fail("(g)", at, std::to_string(M_(s, uv)), std::to_string(mp.mmul(M_(s, u), M_(t, v))));
                    if (G_(s, uv) != G_(t, v))
                        return fail("(h)", at, std::to_string(G_(s, uv)), std::to_string(G_(t, v)));
                }
    // ψ(s) = g(s,e) ∈ G, ψ(u) = m(e,u) ∈ M, ψ(su) = ψ(s)ψ(u); θ = ψ^{-1}.
    const FiniteGroup& X = mp.X;
    std::vector<int> psi(X.order(), -1);
    std::vector<char> hit(X.order(), 0);
    for (int x = 0; x < X.order(); ++x) {
        auto [s, u] = mp.split_mg(x);
        int img = X.mul(mp.gx(G_(s, 0)), mp.mx(M_(0, u)));
        if (hit[img]) return fail("psi bijective", {(std::uint64_t)x}, std::to_string(img), "unused image");
        hit[img] = 1;
        psi[x] = img;
    }
    GroupIsomorphism theta = inverse(GroupIsomorphism{psi});
    if (!is_isomorphism(X, X, theta.map)) return fail("theta homomorphism", {}, "not a homomorphism", "automorphism");
    if (!is_factor_reversing(mp, theta)) return fail("theta factor-reversing", {}, "preserves a factor", "reverses");
    // (a)-(d): m×g and (θ(s▷u), θ(s◁u)) are mutually inverse.
    for (int s = 0; s < nM; ++s)
        for (int u = 0; u < nG; ++u) {
            std::vector<std::uint64_t> at{(std::uint64_t)s, (std::uint64_t)u};
            int a = mp.M.local[theta(mp.gx(mp.lt(s, u)))];
            int b = mp.G.local[theta(mp.mx(mp.rt(s, u)))];
            if (M_(a, b) != s) return fail("(a)", at, std::to_string(M_(a, b)), std::to_string(s));
            if (G_(a, b) != u) return fail("(b)", at, std::to_string(G_(a, b)), std::to_string(u));
            int ms = M_(s, u), gs = G_(s, u);
            if (mp.M.local[theta(mp.gx(mp.lt(ms, gs)))] != s) return fail("(c)", at, "", std::to_string(s));
            if (mp.G.local[theta(mp.mx(mp.rt(ms, gs)))] != u) return fail("(d)", at, "", std::to_string(u));
        }
    // The remaining Hopf structure: φ must intertwine coproduct, counit and antipode too.
    Report hop = verify_hopf_morphism(H, Hd, LinearMap::from_permutation(phi));
    for (const auto& c : hop.checks)
        if (!c.passed) {
            res.failed_step = "hopf " + c.name;
            res.counterexample = c.counterexample;
            return res;
        }
    res.theta = theta;
    return res;
}

CheckResult verify_canonical_pairing_antipode(const HopfAlgebraData& H, const HopfAlgebraData& Hd) {
    CheckResult r;
    r.name = "<Sh,Sa>=<h,a>";
    const std::size_t d = H.dim;
    r.cases = d * d;
    // Canonical pairing: ⟨H basis i, H* basis j⟩ = δ_{ij}.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Rational l;
            for (const auto& x : H.antipode.column(i))
                for (const auto& y : Hd.antipode.column(j))
                    if (x.key == y.key) l += x.coef * y.coef;
            Rational rhs = i == j ? 1 : 0;
            if (!(l == rhs)) {
                r.passed = false;
                r.counterexample = Counterexample{{i, j}, l.str(), rhs.str()};
                return r;
            }
        }
    return r;
}

}  // namespace bicross
