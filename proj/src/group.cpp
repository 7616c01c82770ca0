#include "bicross/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "bicross/errors.hpp"
#include "bicross/parallel.hpp"

namespace bicross {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> cayley)
    : name_(std::move(name)), n_(static_cast<int>(cayley.size())) {
    if (n_ < 1) throw SpecError("group table is empty");
    table_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(cayley[i].size()) != n_) throw SpecError("group table is not square");
        for (int j = 0; j < n_; ++j) {
            int v = cayley[i][j];
            if (v < 0 || v >= n_) throw SpecError("group table entry out of range");
            table_[static_cast<std::size_t>(i) * n_ + j] = v;
        }
    }
    inv_.assign(n_, -1);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (mul(i, j) == 0) {
                inv_[i] = j;
                break;
            }
    for (int i = 0; i < n_; ++i)
        if (inv_[i] < 0) throw SpecError("element without inverse in group table");
    std::string bad = check_group_table(*this);
    if (!bad.empty()) throw SpecError("invalid group table: " + bad);
}

std::vector<std::vector<int>> FiniteGroup::cayley() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t[i][j] = mul(i, j);
    return t;
}

int FiniteGroup::element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

int FiniteGroup::pow(int a, int k) const {
    int m = element_order(a);
    k %= m;
    if (k < 0) k += m;
    int r = 0;
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

int FiniteGroup::find_perm(const Perm& p) const {
    for (std::size_t i = 0; i < perms_.size(); ++i)
        if (perms_[i] == p) return static_cast<int>(i);
    return -1;
}

std::string check_group_table(const FiniteGroup& g) {
    const int n = g.order();
    std::ostringstream os;
    for (int i = 0; i < n; ++i)
        if (g.mul(0, i) != i || g.mul(i, 0) != i) {
            os << "identity law fails at " << i;
            return os.str();
        }
    for (int i = 0; i < n; ++i)
        if (g.mul(i, g.inv(i)) != 0 || g.mul(g.inv(i), i) != 0) {
            os << "inverse law fails at " << i;
            return os.str();
        }
    for (int i = 0; i < n; ++i) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int j = 0; j < n; ++j) {
            if (row[g.mul(i, j)]++ || col[g.mul(j, i)]++) {
                os << "row/column " << i << " is not a permutation";
                return os.str();
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k))) {
                    os << "associativity fails at (" << i << "," << j << "," << k << ")";
                    return os.str();
                }
    return {};
}

Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    Perm p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k) p[c[k]] = c[(k + 1) % c.size()];
    return p;
}

FiniteGroup group_from_generators(int degree, const std::vector<Perm>& generators, int order_cap,
                                  std::string name) {
    if (degree < 0) throw SpecError("negative degree");
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != degree) throw SpecError("generator has wrong degree");
        std::vector<char> hit(degree, 0);
        for (int x : g) {
            if (x < 0 || x >= degree || hit[x]) throw SpecError("generator is not a bijection");
            hit[x] = 1;
        }
    }
    Perm id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;
    std::vector<Perm> elems{id};
    std::map<Perm, int> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : generators) {
            Perm next = perm_compose(elems[head], g);
            if (index.count(next)) continue;
            if (static_cast<int>(elems.size()) >= order_cap)
                throw OrderCapExceeded("closure exceeds order cap " + std::to_string(order_cap));
            index.emplace(next, static_cast<int>(elems.size()));
            elems.push_back(std::move(next));
        }
    }
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = index.at(perm_compose(elems[i], elems[j]));
    FiniteGroup g(std::move(name), std::move(t));
    g.set_perms(std::move(elems));
    return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.order(), nb = b.order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int i = 0; i < na * nb; ++i)
        for (int j = 0; j < na * nb; ++j)
            t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
    return FiniteGroup("product:" + a.name() + "," + b.name(), std::move(t));
}

namespace {

int parse_count(const std::string& s, const std::string& spec) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw SpecError("bad group spec: " + spec);
    long v = std::stol(s);
    if (v < 1) throw SpecError("group parameter must be >= 1: " + spec);
    if (v > kDefaultOrderCap) throw SpecError("group parameter too large: " + spec);
    return static_cast<int>(v);
}

}  // namespace

FiniteGroup builtin_group(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw SpecError("bad group spec: " + spec);
    std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "cyclic") {
        int n = parse_count(arg, spec);
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        return FiniteGroup(spec, std::move(t));
    }
    if (kind == "dihedral") {
        // a^i b^j at index i + n*j, with b a b = a^{-1}.
        int n = parse_count(arg, spec);
        std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
        for (int x = 0; x < 2 * n; ++x)
            for (int y = 0; y < 2 * n; ++y) {
                int i = x % n, j = x / n, k = y % n, l = y / n;
                int r = ((j ? i - k : i + k) % n + n) % n;
                t[x][y] = r + n * ((j + l) % 2);
            }
        return FiniteGroup(spec, std::move(t));
    }
    if (kind == "sym") {
        int n = parse_count(arg, spec);
        if (n > 6) throw SpecError("sym:n supported up to n=6");
        std::vector<Perm> gens;
        if (n >= 2) {
            gens.push_back(perm_from_cycles(n, {{0, 1}}));
            std::vector<int> cyc(n);
            for (int i = 0; i < n; ++i) cyc[i] = i;
            if (n >= 3) gens.push_back(perm_from_cycles(n, {cyc}));
        }
        return group_from_generators(n, gens, kDefaultOrderCap, spec);
    }
    if (kind == "product") {
        // Split at the first comma whose two halves both parse.
        for (std::size_t pos = arg.find(','); pos != std::string::npos; pos = arg.find(',', pos + 1)) {
            try {
                FiniteGroup a = builtin_group(arg.substr(0, pos));
                FiniteGroup b = builtin_group(arg.substr(pos + 1));
                if (static_cast<long>(a.order()) * b.order() > kDefaultOrderCap)
                    throw OrderCapExceeded("product exceeds order cap");
                FiniteGroup p = direct_product(a, b);
                p.set_name(spec);
                return p;
            } catch (const SpecError&) {
            }
        }
        throw SpecError("bad product spec: " + spec);
    }
    throw SpecError("unknown group kind: " + spec);
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    Subgroup h;
    h.local.assign(g.order(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i) h.local[elements[i]] = static_cast<int>(i);
    h.elements = std::move(elements);
    return h;
}

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& generators) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (int s : generators) {
            int x = g.mul(elems[head], s);
            if (!in[x]) {
                in[x] = 1;
                elems.push_back(x);
            }
        }
    return make_subgroup(g, std::move(elems));
}

std::string check_subgroup(const FiniteGroup& g, const Subgroup& h) {
    if (h.elements.empty() || h.elements[0] != 0) return "missing identity";
    if (!std::is_sorted(h.elements.begin(), h.elements.end())) return "elements not sorted";
    for (int a : h.elements) {
        if (!h.contains(g.inv(a))) return "not closed under inverse at " + std::to_string(a);
        for (int b : h.elements)
            if (!h.contains(g.mul(a, b)))
                return "not closed under product at (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    return {};
}

std::vector<Subgroup> subgroups_of(const FiniteGroup& g, int order_filter) {
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> all;
    std::vector<Subgroup> cyclic;
    for (int x = 0; x < g.order(); ++x) {
        Subgroup c = subgroup_closure(g, {x});
        if (seen.insert(c.elements).second) {
            cyclic.push_back(c);
            all.push_back(c);
        }
    }
    // Join with cyclic subgroups until no new subgroup appears.
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (const auto& c : cyclic) {
            if (std::includes(all[i].elements.begin(), all[i].elements.end(), c.elements.begin(),
                              c.elements.end()))
                continue;
            std::vector<int> gens = all[i].elements;
            gens.insert(gens.end(), c.elements.begin(), c.elements.end());
            Subgroup j = subgroup_closure(g, gens);
            if (seen.insert(j.elements).second) all.push_back(std::move(j));
        }
    }
    std::vector<Subgroup> out;
    for (auto& h : all)
        if (order_filter <= 0 || h.order() == order_filter) out.push_back(std::move(h));
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements < b.elements;
    });
    return out;
}

bool is_isomorphism(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& map) {
    if (src.order() != tgt.order() || static_cast<int>(map.size()) != src.order()) return false;
    std::vector<char> hit(tgt.order(), 0);
    for (int y : map) {
        if (y < 0 || y >= tgt.order() || hit[y]) return false;
        hit[y] = 1;
    }
    for (int i = 0; i < src.order(); ++i)
        for (int j = 0; j < src.order(); ++j)
            if (map[src.mul(i, j)] != tgt.mul(map[i], map[j])) return false;
    return true;
}

GroupIsomorphism compose(const GroupIsomorphism& a, const GroupIsomorphism& b) {
    GroupIsomorphism r;
    r.map.resize(b.map.size());
    for (std::size_t i = 0; i < b.map.size(); ++i) r.map[i] = a.map[b.map[i]];
    return r;
}

GroupIsomorphism inverse(const GroupIsomorphism& a) {
    GroupIsomorphism r;
    r.map.resize(a.map.size());
    for (std::size_t i = 0; i < a.map.size(); ++i) r.map[a.map[i]] = static_cast<int>(i);
    return r;
}

std::vector<int> generating_set(const FiniteGroup& g) {
    std::vector<int> gens;
    std::vector<char> covered(g.order(), 0);
    covered[0] = 1;
    // Prefer high-order elements: fewer generators, smaller search tree.
    std::vector<int> order(g.order());
    for (int i = 0; i < g.order(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.element_order(a) > g.element_order(b); });
    for (int x : order) {
        if (covered[x]) continue;
        gens.push_back(x);
        Subgroup h = subgroup_closure(g, gens);
        for (int e : h.elements) covered[e] = 1;
    }
    return gens;
}

namespace {

struct Partial {
    std::vector<int> map;   // src -> tgt or -1
    std::vector<char> used; // tgt images taken
    std::vector<int> domain;
};

// Extends the partial map over the subgroup generated by the assigned
// generators. Returns false on an inconsistency or filter rejection.
bool extend(const FiniteGroup& src, const FiniteGroup& tgt, Partial& p, const std::vector<int>& gens,
            std::size_t assigned, const std::function<bool(int, int)>& filter) {
    for (std::size_t head = 0; head < p.domain.size(); ++head) {
        int x = p.domain[head];
        for (std::size_t k = 0; k < assigned; ++k) {
            int g = gens[k];
            int y = src.mul(x, g);
            int img = tgt.mul(p.map[x], p.map[g]);
            if (p.map[y] >= 0) {
                if (p.map[y] != img) return false;
                continue;
            }
            if (p.used[img]) return false;
            if (filter && !filter(y, img)) return false;
            p.map[y] = img;
            p.used[img] = 1;
            p.domain.push_back(y);
        }
    }
    return true;
}

void search(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& gens, std::size_t k,
            const Partial& p, const IsoSearch& opts, std::vector<GroupIsomorphism>& out) {
    if (k == gens.size()) {
        if (static_cast<int>(p.domain.size()) != src.order()) return;
        if (opts.accept && !opts.accept(p.map)) return;
        out.push_back({p.map});
        return;
    }
    const int g = gens[k];
    const int ord = src.element_order(g);
    for (int c = 0; c < tgt.order(); ++c) {
        if (tgt.element_order(c) != ord) continue;
        Partial q = p;
        if (q.map[g] >= 0) {
            if (q.map[g] != c) continue;
        } else {
            if (q.used[c]) continue;
            if (opts.element_filter && !opts.element_filter(g, c)) continue;
            q.map[g] = c;
            q.used[c] = 1;
            q.domain.push_back(g);
        }
        if (!extend(src, tgt, q, gens, k + 1, opts.element_filter)) continue;
        search(src, tgt, gens, k + 1, q, opts, out);
    }
}

std::vector<int> order_profile(const FiniteGroup& g) {
    std::vector<int> p;
    for (int i = 0; i < g.order(); ++i) p.push_back(g.element_order(i));
    std::sort(p.begin(), p.end());
    return p;
}

}  // namespace

std::vector<GroupIsomorphism> find_isomorphisms(const FiniteGroup& src, const FiniteGroup& tgt,
                                                const IsoSearch& opts) {
    if (src.order() != tgt.order()) return {};
    if (order_profile(src) != order_profile(tgt)) return {};
    std::vector<int> gens = opts.generators.empty() ? generating_set(src) : opts.generators;
    Partial root;
    root.map.assign(src.order(), -1);
    root.used.assign(tgt.order(), 0);
    root.map[0] = 0;
    root.used[0] = 1;
    root.domain = {0};
    if (opts.element_filter && !opts.element_filter(0, 0)) return {};
    if (gens.empty()) {
        std::vector<GroupIsomorphism> out;
        search(src, tgt, gens, 0, root, opts, out);
        return out;
    }
    // Top-level branches are independent; split them across workers and
    // concatenate in candidate order.
    std::vector<int> firsts;
    const int ord0 = src.element_order(gens[0]);
    for (int c = 0; c < tgt.order(); ++c)
        if (tgt.element_order(c) == ord0) firsts.push_back(c);
    std::vector<std::vector<GroupIsomorphism>> parts(firsts.size());
    parallel_chunks(
        firsts.size(), opts.workers,
        [&](std::size_t, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                Partial q = root;
                const int g = gens[0], c = firsts[i];
                if (q.map[g] >= 0) {
                    if (q.map[g] != c) continue;
                } else {
                    if (q.used[c]) continue;
                    if (opts.element_filter && !opts.element_filter(g, c)) continue;
                    q.map[g] = c;
                    q.used[c] = 1;
                    q.domain.push_back(g);
                }
                if (!extend(src, tgt, q, gens, 1, opts.element_filter)) continue;
                search(src, tgt, gens, 1, q, opts, parts[i]);
            }
        },
        1);
    std::vector<GroupIsomorphism> out;
    for (auto& p : parts)
        for (auto& x : p) out.push_back(std::move(x));
    return out;
}

}  // namespace bicross
