#include "bicross/matched_pair.hpp"

#include <algorithm>
#include <functional>

#include "bicross/errors.hpp"
#include "bicross/parallel.hpp"

namespace bicross {

std::vector<std::pair<Subgroup, Subgroup>> exact_factorizations(const FiniteGroup& x, unsigned workers) {
    std::vector<Subgroup> subs = subgroups_of(x);
    std::vector<std::vector<std::pair<Subgroup, Subgroup>>> parts(subs.size());
    parallel_chunks(
        subs.size(), workers,
        [&](std::size_t, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const Subgroup& g = subs[i];
                for (const Subgroup& m : subs) {
                    if (g.order() * m.order() != x.order()) continue;
                    bool trivial = true;
                    for (int el : m.elements)
                        if (el != 0 && g.contains(el)) {
                            trivial = false;
                            break;
                        }
                    if (trivial) parts[i].emplace_back(g, m);
                }
            }
        },
        4);
    std::vector<std::pair<Subgroup, Subgroup>> out;
    for (auto& p : parts)
        for (auto& f : p) out.push_back(std::move(f));
    return out;
}

MatchedPair derive_matched_pair(const FiniteGroup& x, const Subgroup& g, const Subgroup& m) {
    if (!check_subgroup(x, g).empty() || !check_subgroup(x, m).empty())
        throw FactorizationError("factor is not a subgroup");
    if (g.order() * m.order() != x.order()) throw FactorizationError("|G||M| != |X|");
    MatchedPair mp;
    mp.X = x;
    mp.G = g;
    mp.M = m;
    const int n = x.order();
    mp.gm_split.assign(n, {-1, -1});
    mp.mg_split.assign(n, {-1, -1});
    for (int u = 0; u < g.order(); ++u)
        for (int s = 0; s < m.order(); ++s) {
            int a = x.mul(g[u], m[s]);
            int b = x.mul(m[s], g[u]);
            if (mp.gm_split[a].first >= 0 || mp.mg_split[b].first >= 0)
                throw FactorizationError("G ∩ M is nontrivial; factorization not exact");
            mp.gm_split[a] = {u, s};
            mp.mg_split[b] = {s, u};
        }
    mp.act_left.assign(m.order(), std::vector<int>(g.order()));
    mp.act_right.assign(m.order(), std::vector<int>(g.order()));
    for (int s = 0; s < m.order(); ++s)
        for (int u = 0; u < g.order(); ++u) {
            auto [v, t] = mp.gm_split[x.mul(m[s], g[u])];
            mp.act_left[s][u] = v;
            mp.act_right[s][u] = t;
        }
    return mp;
}

namespace {

// Sweeps all index tuples of the given extents; fails at the first tuple where ok() is false.
void law(Report& rep, const std::string& name, std::vector<int> extents,
         const std::function<bool(const std::vector<int>&, std::string&, std::string&)>& ok) {
    std::vector<int> idx(extents.size(), 0);
    std::uint64_t cases = 0;
    for (;;) {
        bool empty = false;
        for (int e : extents)
            if (e == 0) empty = true;
        if (empty) break;
        std::string lhs, rhs;
        ++cases;
        if (!ok(idx, lhs, rhs)) {
            Counterexample cx;
            for (int i : idx) cx.indices.push_back(static_cast<std::uint64_t>(i));
            cx.lhs = lhs;
            cx.rhs = rhs;
            rep.fail(name, cx, cases);
            return;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == extents[k]) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    rep.add(name, true, cases);
}

bool eq(int a, int b, std::string& l, std::string& r) {
    l = std::to_string(a);
    r = std::to_string(b);
    return a == b;
}

}  // namespace

Report verify_matched_pair(const MatchedPair& mp) {
    Report rep;
    rep.title = "matched pair";
    const int nG = mp.nG(), nM = mp.nM();
    const FiniteGroup& X = mp.X;
    // Uniqueness of factorization: (u,s) -> u·s hits every element once.
    {
        std::vector<int> hits(X.order(), 0);
        for (int u = 0; u < nG; ++u)
            for (int s = 0; s < nM; ++s) ++hits[X.mul(mp.gx(u), mp.mx(s))];
        int bad = -1;
        for (int i = 0; i < X.order(); ++i)
            if (hits[i] != 1) {
                bad = i;
                break;
            }
        if (bad < 0) rep.add("unique factorization", true, static_cast<std::uint64_t>(nG) * nM);
        else rep.fail("unique factorization", {{static_cast<std::uint64_t>(bad)}, std::to_string(hits[bad]), "1"});
    }
    const int e = 0;
    law(rep, "defining identity su=(s>u)(s<u)", {nM, nG}, [&](const auto& i, auto& l, auto& r) {
        int s = i[0], u = i[1];
        return eq(X.mul(mp.mx(s), mp.gx(u)), X.mul(mp.gx(mp.lt(s, u)), mp.mx(mp.rt(s, u))), l, r);
    });
    law(rep, "s<e=s", {nM}, [&](const auto& i, auto& l, auto& r) { return eq(mp.rt(i[0], e), i[0], l, r); });
    law(rep, "(s<u)<v=s<(uv)", {nM, nG, nG}, [&](const auto& i, auto& l, auto& r) {
        int s = i[0], u = i[1], v = i[2];
        return eq(mp.rt(mp.rt(s, u), v), mp.rt(s, mp.gmul(u, v)), l, r);
    });
    law(rep, "e<u=e", {nG}, [&](const auto& i, auto& l, auto& r) { return eq(mp.rt(e, i[0]), e, l, r); });
    law(rep, "(st)<u=(s<(t>u))(t<u)", {nM, nM, nG}, [&](const auto& i, auto& l, auto& r) {
        int s = i[0], t = i[1], u = i[2];
        return eq(mp.rt(mp.mmul(s, t), u), mp.mmul(mp.rt(s, mp.lt(t, u)), mp.rt(t, u)), l, r);
    });
    law(rep, "e>u=u", {nG}, [&](const auto& i, auto& l, auto& r) { return eq(mp.lt(e, i[0]), i[0], l, r); });
    law(rep, "s>(t>u)=(st)>u", {nM, nM, nG}, [&](const auto& i, auto& l, auto& r) {
        int s = i[0], t = i[1], u = i[2];
        return eq(mp.lt(s, mp.lt(t, u)), mp.lt(mp.mmul(s, t), u), l, r);
    });
    law(rep, "s>e=e", {nM}, [&](const auto& i, auto& l, auto& r) { return eq(mp.lt(i[0], e), e, l, r); });
    law(rep, "s>(uv)=(s>u)((s<u)>v)", {nM, nG, nG}, [&](const auto& i, auto& l, auto& r) {
        int s = i[0], u = i[1], v = i[2];
        return eq(mp.lt(s, mp.gmul(u, v)), mp.gmul(mp.lt(s, u), mp.lt(mp.rt(s, u), v)), l, r);
    });
    return rep;
}

std::pair<FiniteGroup, GroupIsomorphism> double_cross_product(const MatchedPair& mp) {
    const int nG = mp.nG(), nM = mp.nM(), n = nG * nM;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int u = a / nM, s = a % nM, v = b / nM, r = b % nM;
            int uu = mp.gmul(u, mp.lt(s, v));
            int ss = mp.mmul(mp.rt(s, v), r);
            t[a][b] = uu * nM + ss;
        }
    FiniteGroup g(mp.X.name() + " double cross product", std::move(t));
    GroupIsomorphism iso;
    iso.map.resize(n);
    for (int a = 0; a < n; ++a) iso.map[a] = mp.X.mul(mp.gx(a / nM), mp.mx(a % nM));
    return {std::move(g), std::move(iso)};
}

bool is_factor_reversing(const MatchedPair& mp, const GroupIsomorphism& theta) {
    if (mp.nG() != mp.nM()) return false;
    if (!is_isomorphism(mp.X, mp.X, theta.map)) return false;
    for (int g : mp.G.elements)
        if (!mp.M.contains(theta(g))) return false;
    for (int m : mp.M.elements)
        if (!mp.G.contains(theta(m))) return false;
    return true;
}

namespace {

// G ∪ M generates X; generators taken inside the factors let the image
// filter prune from the first level of the search.
std::vector<int> factor_generators(const MatchedPair& mp) {
    std::vector<int> pool;
    for (const Subgroup* h : {&mp.G, &mp.M}) {
        std::vector<int> els(h->elements.begin(), h->elements.end());
        std::stable_sort(els.begin(), els.end(),
                         [&](int a, int b) { return mp.X.element_order(a) > mp.X.element_order(b); });
        pool.insert(pool.end(), els.begin(), els.end());
    }
    std::vector<int> gens;
    std::vector<char> covered(mp.X.order(), 0);
    covered[0] = 1;
    for (int x : pool) {
        if (covered[x]) continue;
        gens.push_back(x);
        for (int y : subgroup_closure(mp.X, gens).elements) covered[y] = 1;
    }
    return gens;
}

}  // namespace

std::vector<GroupIsomorphism> find_factor_reversing(const MatchedPair& mp, unsigned workers) {
    if (mp.nG() != mp.nM()) return {};
    IsoSearch opts;
    opts.generators = factor_generators(mp);
    opts.workers = workers;
    opts.element_filter = [&mp](int src, int img) {
        if (mp.G.contains(src) && !mp.M.contains(img)) return false;
        if (mp.M.contains(src) && !mp.G.contains(img)) return false;
        return true;
    };
    return find_isomorphisms(mp.X, mp.X, opts);
}

std::vector<GroupIsomorphism> find_factor_preserving_or_reversing(const MatchedPair& mp, unsigned workers) {
    IsoSearch opts;
    opts.generators = factor_generators(mp);
    opts.workers = workers;
    opts.accept = [&mp](const std::vector<int>& map) {
        bool keeps = true, swaps = true;
        for (int g : mp.G.elements) {
            keeps = keeps && mp.G.contains(map[g]);
            swaps = swaps && mp.M.contains(map[g]);
        }
        for (int m : mp.M.elements) {
            keeps = keeps && mp.M.contains(map[m]);
            swaps = swaps && mp.G.contains(map[m]);
        }
        return keeps || swaps;
    };
    return find_isomorphisms(mp.X, mp.X, opts);
}

std::vector<int> cyclic_labels(const FiniteGroup& x, const Subgroup& s) {
    const int n = s.order();
    for (int g : s.elements) {
        if (x.element_order(g) != n) continue;
        std::vector<int> out(n);
        int cur = x.identity();
        for (int k = 0; k < n; ++k) {
            out[k] = s.local[cur];
            cur = x.mul(cur, g);
        }
        return out;
    }
    return {};
}

}  // namespace bicross
