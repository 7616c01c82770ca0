#pragma once

#include <string>
#include <vector>

#include "bicross/cli.hpp"
#include "bicross/errors.hpp"
#include "bicross/group.hpp"
#include "bicross/matched_pair.hpp"
#include "bicross/report.hpp"

namespace fixtures {

using namespace bicross;

// First factorization of the builtin with the given factor orders.
inline MatchedPair pair_with_orders(const std::string& spec, int g, int m) {
    const FiniteGroup x = builtin_group(spec);
    for (const auto& [G, M] : exact_factorizations(x))
        if (G.order() == g && M.order() == m) return derive_matched_pair(x, G, M);
    throw FactorizationError("no factorization of " + spec + " with orders " + std::to_string(g) + "," +
                             std::to_string(m));
}

// S3 = Z3·Z2.
inline const MatchedPair& s3() {
    static const MatchedPair mp = pair_with_orders("sym:3", 3, 2);
    return mp;
}

// Z2·Z2 inside Z2×Z2.
inline const MatchedPair& z2z2() {
    static const MatchedPair mp = pair_with_orders("product:cyclic:2,cyclic:2", 2, 2);
    return mp;
}

// Z6·Z6 inside S3×S3, both factors cyclic of order 6.
inline const MatchedPair& z6z6() {
    static const MatchedPair mp = [] {
        const FiniteGroup x = builtin_group("product:dihedral:3,dihedral:3");
        const auto facs = exact_factorizations(x);
        const std::size_t i = cli::resolve_factor(x, facs, "z6z6");
        return derive_matched_pair(x, facs[i].first, facs[i].second);
    }();
    return mp;
}

// Additive coordinates on Z_n·Z_n: G(k), M(k) are the local indices of g^k, m^k.
struct Coords {
    std::vector<int> g, m;
    int n() const { return static_cast<int>(g.size()); }
    int G(int k) const { return g[((k % n()) + n()) % n()]; }
    int M(int k) const { return m[((k % n()) + n()) % n()]; }
};

inline Coords cyclic_coords(const MatchedPair& mp) {
    return {cyclic_labels(mp.X, mp.G), cyclic_labels(mp.X, mp.M)};
}

// Empty when every check passed, else "name: lhs vs rhs" of the first failure.
inline std::string first_failure(const Report& r) {
    for (const auto& c : r.checks) {
        if (c.passed) continue;
        std::string s = r.title + " / " + c.name;
        if (c.counterexample) s += ": " + c.counterexample->lhs + " vs " + c.counterexample->rhs;
        return s;
    }
    return {};
}

inline const CheckResult* failed_check(const Report& r) {
    for (const auto& c : r.checks)
        if (!c.passed) return &c;
    return nullptr;
}

}  // namespace fixtures
