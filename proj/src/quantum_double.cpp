#include "bicross/quantum_double.hpp"

#include <algorithm>
#include <random>

#include "bicross/errors.hpp"
#include "bicross/parallel.hpp"

namespace bicross {

CoadjointActions coadjoint_actions(const MatchedPair& mp) {
    const int nM = mp.nM(), nG = mp.nG();
    CoadjointActions ca;
    ca.dim = static_cast<std::size_t>(nM) * nG;
    ca.h_on_dual.resize(ca.dim * ca.dim);
    ca.dual_on_h.resize(ca.dim * ca.dim);
    for (int t = 0; t < nM; ++t)
        for (int v = 0; v < nG; ++v)
            for (int s = 0; s < nM; ++s)
                for (int u = 0; u < nG; ++u) {
                    const std::size_t k = bicross_index(mp, t, v) * ca.dim + bicross_index(mp, s, u);
                    const int su = mp.lt(s, u), sr = mp.rt(s, u);
                    const int tp = mp.rt(t, mp.ginv(su));
                    if (v == mp.gmul(mp.ginv(su), u)) {
                        int m = mp.mmul(mp.mmul(tp, s), mp.minv(tp));
                        ca.h_on_dual[k] = SparseVec::unit(bicross_index(mp, m, mp.lt(tp, u)));
                    }
                    if (mp.rt(t, v) == mp.mmul(t, sr)) {
                        int g = mp.gmul(mp.gmul(su, v), mp.ginv(u));
                        ca.dual_on_h[k] = SparseVec::unit(bicross_index(mp, tp, g));
                    }
                }
    return ca;
}

namespace {

struct Triple {
    std::size_t x1, x2, x3;
    Rational c;
};

// (Δ⊗id)Δ of every basis element.
std::vector<std::vector<Triple>> double_coproducts(const HopfAlgebraData& h) {
    const std::size_t d = h.dim;
    std::vector<std::vector<Triple>> out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (const auto& ab : h.delta(i))
            for (const auto& a12 : h.delta(ab.key / d))
                out[i].push_back({a12.key / d, a12.key % d, ab.key % d, ab.coef * a12.coef});
    return out;
}

}  // namespace

CoadjointActions coadjoint_actions_direct(const HopfAlgebraData& h, const HopfAlgebraData& hd) {
    if (h.dim != hd.dim) throw ShapeError("H and H* dimensions differ");
    const std::size_t d = h.dim;
    CoadjointActions ca;
    ca.dim = d;
    ca.h_on_dual.resize(d * d);
    ca.dual_on_h.resize(d * d);
    auto d2h = double_coproducts(h);
    auto d2a = double_coproducts(hd);
    std::vector<Accumulator> acc(d);
    // h◁a: ⟨a,(Sh₁)h₃⟩ is the coefficient of e_a in (Sh₁)h₃.
    for (std::size_t i = 0; i < d; ++i) {
        for (const auto& tr : d2h[i])
            for (const auto& s : h.antipode.column(tr.x1))
                for (const auto& p : h.mul(s.key, tr.x3)) acc[p.key].add(tr.x2, tr.c * s.coef * p.coef);
        for (std::size_t a = 0; a < d; ++a) ca.dual_on_h[i * d + a] = acc[a].take();
    }
    // h▷a: ⟨h,(Sa₁)a₃⟩ is the coefficient of f^h in (Sa₁)a₃.
    for (std::size_t a = 0; a < d; ++a) {
        for (const auto& tr : d2a[a])
            for (const auto& s : hd.antipode.column(tr.x1))
                for (const auto& p : hd.mul(s.key, tr.x3)) acc[p.key].add(tr.x2, tr.c * s.coef * p.coef);
        for (std::size_t i = 0; i < d; ++i) ca.h_on_dual[i * d + a] = acc[i].take();
    }
    return ca;
}

CheckResult compare_coadjoint(const CoadjointActions& a, const CoadjointActions& b) {
    CheckResult r;
    r.name = "coadjoint closed forms = defining formulas";
    r.cases = a.dim * a.dim;
    if (a.dim != b.dim) {
        r.passed = false;
        r.counterexample = Counterexample{{}, std::to_string(a.dim), std::to_string(b.dim)};
        return r;
    }
    for (std::size_t k = 0; k < a.dim * a.dim; ++k) {
        if (!(a.h_on_dual[k] == b.h_on_dual[k])) {
            r.passed = false;
            r.counterexample =
                Counterexample{{k / a.dim, k % a.dim}, "h>a " + truncated(a.h_on_dual[k]), truncated(b.h_on_dual[k])};
            return r;
        }
        if (!(a.dual_on_h[k] == b.dual_on_h[k])) {
            r.passed = false;
            r.counterexample =
                Counterexample{{k / a.dim, k % a.dim}, "h<a " + truncated(a.dual_on_h[k]), truncated(b.dual_on_h[k])};
            return r;
        }
    }
    return r;
}

Report verify_coadjoint_equivariance(const MatchedPair& mp, const GroupIsomorphism& theta,
                                     const CoadjointActions& ca) {
    LinearMap tt = theta_tilde(mp, theta);
    const std::size_t d = ca.dim;
    const auto perm = *tt.as_permutation();
    Report rep;
    rep.title = "coadjoint equivariance";
    auto sweep = [&](const std::string& name, const std::vector<SparseVec>& src, const std::vector<SparseVec>& tgt) {
        for (std::size_t h = 0; h < d; ++h)
            for (std::size_t b = 0; b < d; ++b) {
                SparseVec l = apply(tt, src[h * d + b]);
                const SparseVec& r = tgt[perm[b] * d + perm[h]];
                if (!(l == r)) {
                    rep.fail(name, {{h, b}, truncated(l), truncated(r)}, d * d);
                    return;
                }
            }
        rep.add(name, true, d * d);
    };
    sweep("theta(h>b)=theta(b)<theta(h)", ca.h_on_dual, ca.dual_on_h);
    sweep("theta(h<b)=theta(b)>theta(h)", ca.dual_on_h, ca.h_on_dual);
    return rep;
}

CheckResult verify_mutual_action_identity(const HopfAlgebraData& h, const HopfAlgebraData& hd,
                                          const CoadjointActions& ca) {
    const std::size_t d = h.dim;
    CheckResult r;
    r.name = "h1>a1 (x) h2<a2 = h2>a2 (x) h1<a1";
    r.cases = d * d;
    Accumulator l, rr;
    for (std::size_t hi = 0; hi < d; ++hi)
        for (std::size_t a = 0; a < d; ++a) {
            for (const auto& hh : h.delta(hi))
                for (const auto& aa : hd.delta(a)) {
                    const std::size_t h1 = hh.key / d, h2 = hh.key % d, a1 = aa.key / d, a2 = aa.key % d;
                    const Rational c = hh.coef * aa.coef;
                    for (const auto& x : ca.h_on_dual[h1 * d + a1])
                        for (const auto& y : ca.dual_on_h[h2 * d + a2]) l.add(x.key * d + y.key, c * x.coef * y.coef);
                    for (const auto& x : ca.h_on_dual[h2 * d + a2])
                        for (const auto& y : ca.dual_on_h[h1 * d + a1])
                            rr.add(x.key * d + y.key, c * x.coef * y.coef);
                }
            SparseVec lv = l.take(), rv = rr.take();
            if (!(lv == rv)) {
                r.passed = false;
                r.counterexample = Counterexample{{hi, a}, truncated(lv), truncated(rv)};
                return r;
            }
        }
    return r;
}

namespace {

// D(H) from H, H* and a table cross[h*d + b] = (1⊗h)(b⊗1). General products are
// (a⊗h)(b⊗g) = (a⊗1)·cross(h,b)·(1⊗g), where (a⊗1)(c⊗1) = ca in H*.
HopfAlgebraData assemble_double(const HopfAlgebraData& h, const HopfAlgebraData& hd,
                                const std::vector<SparseVec>& cross, std::string name) {
    const std::size_t d = h.dim, D = d * d;
    HopfAlgebraData out;
    out.name = std::move(name);
    out.dim = D;
    out.factors = {d, d};
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t x = 0; x < d; ++x)
            out.labels.push_back({LabelKind::DoublePair, static_cast<int>(a), static_cast<int>(x)});

    out.product.reserve(D * D, D * 64);
    Accumulator acc;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t b = 0; b < d; ++b)
                for (std::size_t g = 0; g < d; ++g) {
                    for (const auto& c : cross[x * d + b]) {
                        auto left = hd.mul(c.key / d, a);
                        if (left.empty()) continue;
                        auto right = h.mul(c.key % d, g);
                        for (const auto& p : left)
                            for (const auto& q : right) acc.add(p.key * d + q.key, c.coef * p.coef * q.coef);
                    }
                    out.product.push_row(acc.take());
                }

    std::vector<Term> unit;
    for (const auto& p : hd.unit)
        for (const auto& q : h.unit) unit.push_back({p.key * d + q.key, p.coef * q.coef});
    out.unit = SparseVec(std::move(unit));

    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t x = 0; x < d; ++x) {
            for (const auto& p : hd.delta(a))
                for (const auto& q : h.delta(x)) {
                    Key l = (p.key / d) * d + q.key / d;
                    Key r = (p.key % d) * d + q.key % d;
                    acc.add(l * D + r, p.coef * q.coef);
                }
            out.coproduct.push_row(acc.take());
        }

    out.counit.resize(D);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t x = 0; x < d; ++x) out.counit[a * d + x] = hd.counit[a] * h.counit[x];

    // S(a⊗h) = (1⊗Sh)(S^{-1}a⊗1)
    const LinearMap sinv = inverse(hd.antipode);
    out.antipode = LinearMap(D, D);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t x = 0; x < d; ++x) {
            for (const auto& p : h.antipode.column(x))
                for (const auto& q : sinv.column(a))
                    for (const auto& c : cross[p.key * d + q.key]) acc.add(c.key, p.coef * q.coef * c.coef);
            out.antipode.set_column(a * d + x, acc.take());
        }

    // (a⊗h)* = (1⊗h*)((S²a)*⊗1)
    if (h.star && hd.star) {
        const LinearMap sa = compose(*hd.star, compose(hd.antipode, hd.antipode));
        out.star = LinearMap(D, D);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t x = 0; x < d; ++x) {
                for (const auto& p : h.star->column(x))
                    for (const auto& q : sa.column(a))
                        for (const auto& c : cross[p.key * d + q.key]) acc.add(c.key, p.coef * q.coef * c.coef);
                out.star->set_column(a * d + x, acc.take());
            }
    }
    out.finalize();
    return out;
}

}  // namespace

HopfAlgebraData build_double_general(const HopfAlgebraData& h) {
    const HopfAlgebraData hd = dual_hopf(h);
    const std::size_t d = h.dim;
    auto d2h = double_coproducts(h);
    auto d2b = double_coproducts(hd);
    // (1⊗h)(b⊗1) = Σ ⟨Sb₁,h₁⟩⟨b₃,h₃⟩ b₂⊗h₂
    std::vector<SparseVec> cross(d * d);
    Accumulator acc;
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t b = 0; b < d; ++b) {
            for (const auto& tb : d2b[b])
                for (const auto& th : d2h[x]) {
                    if (tb.x3 != th.x3) continue;
                    Rational p = hd.antipode.column(tb.x1).coef(th.x1);
                    if (p.is_zero()) continue;
                    acc.add(tb.x2 * d + th.x2, tb.c * th.c * p);
                }
            cross[x * d + b] = acc.take();
        }
    return assemble_double(h, hd, cross, "D(" + h.name + ")");
}

SparseVec cross_relation(const MatchedPair& mp, std::size_t h, std::size_t b) {
    const int nG = mp.nG();
    const int t = static_cast<int>(h) / nG, v = static_cast<int>(h) % nG;
    const int s = static_cast<int>(b) / nG, u = static_cast<int>(b) % nG;
    const int su = mp.lt(s, u);
    const int tp = mp.rt(t, mp.ginv(su));
    const int w = mp.rt(t, mp.gmul(v, mp.ginv(u)));  // t◁vu^{-1}
    const int a1 = mp.mmul(mp.mmul(tp, s), mp.minv(w));
    const int a2 = mp.lt(w, u);
    const int h2 = mp.gmul(mp.gmul(su, v), mp.ginv(u));
    const std::size_t d = static_cast<std::size_t>(mp.nM()) * nG;
    return SparseVec::unit(bicross_index(mp, a1, a2) * d + bicross_index(mp, tp, h2));
}

SparseVec cross_from_coadjoint(const HopfAlgebraData& h, const HopfAlgebraData& hd, const CoadjointActions& ca,
                               std::size_t hi, std::size_t b) {
    const std::size_t d = h.dim;
    Accumulator acc;
    for (const auto& hh : h.delta(hi))
        for (const auto& bb : hd.delta(b)) {
            const Rational c = hh.coef * bb.coef;
            for (const auto& x : ca.h_on_dual[(hh.key / d) * d + bb.key / d])
                for (const auto& y : ca.dual_on_h[(hh.key % d) * d + bb.key % d])
                    acc.add(x.key * d + y.key, c * x.coef * y.coef);
        }
    return acc.take();
}

HopfAlgebraData build_double_bicross(const MatchedPair& mp) {
    const HopfAlgebraData h = build_H(mp);
    const HopfAlgebraData hd = build_Hdual(mp);
    const std::size_t d = h.dim;
    std::vector<SparseVec> cross(d * d);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t b = 0; b < d; ++b) cross[x * d + b] = cross_relation(mp, x, b);
    return assemble_double(h, hd, cross, "D(H)");
}

GroupDouble build_group_double(const FiniteGroup& x) {
    const std::size_t n = x.order(), D = n * n;
    GroupDouble gd;
    HopfAlgebraData& h = gd.algebra;
    h.name = "D(" + x.name() + ")";
    h.dim = D;
    h.factors = {n, n};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t y = 0; y < n; ++y)
            h.labels.push_back({LabelKind::GroupDouble, static_cast<int>(a), static_cast<int>(y)});
    // (δ_x⊗y)(δ_a⊗b) = δ_{y^{-1}xy,a} δ_x⊗yb
    h.product.reserve(D * D, D * n);
    for (std::size_t xi = 0; xi < n; ++xi)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t conj = x.mul(x.mul(x.inv(y), xi), y);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    h.product.push_row(a == conj ? SparseVec::unit(xi * n + x.mul(y, b)) : SparseVec{});
        }
    std::vector<Term> unit;
    for (std::size_t xi = 0; xi < n; ++xi) unit.push_back({xi * n, 1});
    h.unit = SparseVec(std::move(unit));
    Accumulator acc;
    for (std::size_t xi = 0; xi < n; ++xi)
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t a = 0; a < n; ++a) {
                std::size_t b = x.mul(x.inv(a), xi);
                acc.add((a * n + y) * D + b * n + y, 1);
            }
            h.coproduct.push_row(acc.take());
        }
    h.counit.assign(D, 0);
    for (std::size_t y = 0; y < n; ++y) h.counit[y] = 1;
    std::vector<std::size_t> anti(D), star(D);
    for (std::size_t xi = 0; xi < n; ++xi)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t yi = x.inv(y);
            anti[xi * n + y] = x.mul(x.mul(yi, x.inv(xi)), y) * n + yi;
            star[xi * n + y] = x.mul(x.mul(yi, xi), y) * n + yi;
        }
    h.antipode = LinearMap::from_permutation(anti);
    h.star = LinearMap::from_permutation(star);
    h.finalize();
    std::vector<Term> r;
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) r.push_back({(y * n) * D + z * n + y, 1});
    std::sort(r.begin(), r.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
    gd.R = {2, SparseVec(std::move(r))};
    return gd;
}

TensorElement double_R(const HopfAlgebraData& d) {
    if (d.factors.size() != 2 || d.factors[0] != d.factors[1] || d.labels.size() != d.dim ||
        (d.dim && d.labels[0].kind != LabelKind::DoublePair))
        throw ShapeError("double_R needs a double built on H*⊗H");
    const std::size_t n = d.factors[0], D = d.dim;
    if (d.unit.empty()) throw ShapeError("double has zero unit");
    // The unit is 1_{H*}⊗1_H; read both factors off it.
    const Term first = d.unit.terms().front();
    const std::size_t a0 = first.key / n, h0 = first.key % n;
    std::vector<Rational> beta(n), alpha(n);
    for (std::size_t x = 0; x < n; ++x) beta[x] = d.unit.coef(a0 * n + x);
    for (std::size_t a = 0; a < n; ++a) alpha[a] = d.unit.coef(a * n + h0) / beta[h0];
    Accumulator acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t x = 0; x < n; ++x) {
            if (beta[x].is_zero()) continue;
            for (std::size_t a = 0; a < n; ++a)
                if (!alpha[a].is_zero()) acc.add((i * n + x) * D + a * n + i, beta[x] * alpha[a]);
        }
    return {2, acc.take()};
}

namespace {

struct Leg {
    std::size_t a, b;
    Rational c;
};

std::vector<Leg> legs(const TensorElement& R, std::size_t D) {
    std::vector<Leg> out;
    for (const auto& t : R.v) out.push_back({t.key / D, t.key % D, t.coef});
    return out;
}

CheckResult compare_elements(const std::string& name, const TensorElement& l, const TensorElement& r,
                             std::uint64_t cases) {
    CheckResult c;
    c.name = name;
    c.cases = cases;
    if (!(l == r)) {
        c.passed = false;
        c.counterexample = Counterexample{{}, truncated(l.v), truncated(r.v)};
    }
    return c;
}

}  // namespace

Report verify_quasitriangular(const HopfAlgebraData& d, const TensorElement& R, const CheckOptions& opt) {
    if (R.rank != 2) throw ShapeError("R must lie in D⊗D");
    const std::size_t D = d.dim;
    Report rep;
    rep.title = "quasitriangular: " + d.name;
    const auto L = legs(R, D);
    {
        // R₁₃R₂₃ = Σ r_i ⊗ r_j ⊗ r'_i r'_j
        Accumulator acc;
        for (const auto& x : L)
            for (const auto& y : L)
                for (const auto& p : d.mul(x.b, y.b)) acc.add((x.a * D + y.a) * D + p.key, x.c * y.c * p.coef);
        TensorElement rhs{3, acc.take()};
        rep.add(compare_elements("(D(x)id)R=R13R23", apply_delta(d, R, 0), rhs, L.size()));
    }
    {
        // R₁₃R₁₂ = Σ r_i r_j ⊗ r'_j ⊗ r'_i
        Accumulator acc;
        for (const auto& x : L)
            for (const auto& y : L)
                for (const auto& p : d.mul(x.a, y.a)) acc.add((p.key * D + y.b) * D + x.b, x.c * y.c * p.coef);
        TensorElement rhs{3, acc.take()};
        rep.add(compare_elements("(id(x)D)R=R13R12", apply_delta(d, R, 1), rhs, L.size()));
    }
    {
        TensorElement sr = apply_on_slot(d.antipode, R, 0, D);
        TensorElement one = tensor_one(d, 2);
        CheckResult c = compare_elements("R(S(x)id)R=1", multiply(d, R, sr), one, 1);
        if (c.passed) c = compare_elements("R(S(x)id)R=1", multiply(d, sr, R), one, 1);
        rep.add(c);
    }
    {
        constexpr std::size_t kBasisSample = 10000;
        std::vector<std::size_t> basis;
        bool sampled = false;
        if (D <= std::max(opt.exhaustive_cap, kBasisSample)) {
            basis.resize(D);
            for (std::size_t i = 0; i < D; ++i) basis[i] = i;
        } else {
            sampled = true;
            std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
            for (std::size_t i = 0; i < kBasisSample; ++i) basis.push_back(rng() % D);
        }
        auto fail = first_failure(basis.size(), opt.workers, [&](std::size_t i) -> std::optional<Counterexample> {
            const std::size_t h = basis[i];
            TensorElement dh{2, d.comultiply(SparseVec::unit(h))};
            TensorElement tdh = permute_slots(dh, {1, 0}, D);
            TensorElement l = multiply(d, tdh, R), r = multiply(d, R, dh);
            if (l == r) return std::nullopt;
            return Counterexample{{h}, truncated(l.v), truncated(r.v)};
        });
        CheckResult c;
        c.name = "tau D(h) R = R D(h)";
        c.cases = basis.size();
        c.sampled = sampled;
        if (fail) {
            c.passed = false;
            c.counterexample = fail->second;
        }
        rep.add(c);
    }
    return rep;
}

LinearMap psi_anti_automorphism(const MatchedPair& mp, const GroupIsomorphism& theta) {
    const auto tt = *theta_tilde(mp, theta).as_permutation();
    const std::size_t d = tt.size();
    std::vector<std::size_t> perm(d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t h = 0; h < d; ++h) perm[a * d + h] = tt[h] * d + tt[a];
    return LinearMap::from_permutation(perm);
}

}  // namespace bicross
