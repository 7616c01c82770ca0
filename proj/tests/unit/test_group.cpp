#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bicross/errors.hpp"
#include "bicross/group.hpp"

using namespace bicross;

namespace {

const std::vector<std::string> kBuiltins = {"cyclic:1",  "cyclic:2",    "cyclic:6",    "cyclic:12",
                                            "dihedral:1", "dihedral:3", "dihedral:6",  "sym:3",
                                            "sym:4",      "product:cyclic:2,cyclic:2", "product:dihedral:3,dihedral:3"};

bool is_abelian(const FiniteGroup& g) {
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("generated groups") {
    SUBCASE("one 3-cycle gives Z3") {
        const FiniteGroup g = group_from_generators(3, {perm_from_cycles(3, {{0, 1, 2}})});
        CHECK(g.order() == 3);
        CHECK(find_isomorphisms(g, builtin_group("cyclic:3")).size() == 2);
    }
    SUBCASE("the two order-6 permutations on six points generate S3xS3") {
        const Perm a = perm_from_cycles(6, {{0, 1, 2}, {3, 4}});
        const Perm b = perm_from_cycles(6, {{0, 1}, {3, 4, 5}});
        const FiniteGroup g = group_from_generators(6, {a, b});
        CHECK(g.order() == 36);
        CHECK_FALSE(find_isomorphisms(g, builtin_group("product:dihedral:3,dihedral:3")).empty());
        CHECK(g.find_perm(a) >= 0);
        CHECK(g.element_order(g.find_perm(a)) == 6);
    }
    SUBCASE("no generators give the trivial group") {
        const FiniteGroup g = group_from_generators(1, {});
        CHECK(g.order() == 1);
    }
    SUBCASE("order cap") {
        CHECK_THROWS_AS(group_from_generators(6, {perm_from_cycles(6, {{0, 1, 2, 3, 4, 5}}), perm_from_cycles(6, {{0, 1}})}, 100),
                        OrderCapExceeded);
    }
}

TEST_CASE("builtins") {
    CHECK(builtin_group("cyclic:6").order() == 6);
    CHECK(builtin_group("product:dihedral:3,dihedral:3").order() == 36);
    CHECK(builtin_group("dihedral:1").order() == 2);
    CHECK(builtin_group("sym:4").order() == 24);
    CHECK_FALSE(is_abelian(builtin_group("dihedral:3")));
    CHECK(is_abelian(builtin_group("dihedral:2")));
    CHECK_THROWS_AS(builtin_group("cyclic:0"), SpecError);
    CHECK_THROWS_AS(builtin_group("klein"), SpecError);
    CHECK_THROWS_AS(builtin_group("product:cyclic:2"), SpecError);
}

TEST_CASE("property: every builtin satisfies the Cayley table invariants") {
    for (const auto& spec : kBuiltins) {
        CAPTURE(spec);
        const FiniteGroup g = builtin_group(spec);
        CHECK(check_group_table(g).empty());
        for (int a = 0; a < g.order(); ++a) CHECK(g.mul(a, g.inv(a)) == 0);
    }
}

TEST_CASE("a broken table is rejected") {
    std::vector<std::vector<int>> t = builtin_group("cyclic:4").cayley();
    std::swap(t[1][1], t[1][2]);
    CHECK_THROWS_AS(FiniteGroup("bad", t), SpecError);
}

TEST_CASE("subgroups") {
    const auto triv = subgroups_of(builtin_group("cyclic:1"));
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].elements == std::vector<int>{0});
    CHECK(subgroups_of(builtin_group("sym:3"), 2).size() == 3);
    const auto z6 = subgroups_of(builtin_group("cyclic:6"));
    REQUIRE(z6.size() == 4);
    std::vector<int> orders;
    for (const auto& h : z6) orders.push_back(h.order());
    CHECK(orders == std::vector<int>{1, 2, 3, 6});
    CHECK(subgroups_of(builtin_group("sym:4")).size() == 30);
}

TEST_CASE("property: subgroups of S3 agree with closure of every element subset") {
    const FiniteGroup g = builtin_group("sym:3");
    std::set<std::vector<int>> brute;
    for (int mask = 0; mask < (1 << g.order()); ++mask) {
        std::vector<int> gens;
        for (int i = 0; i < g.order(); ++i)
            if (mask >> i & 1) gens.push_back(i);
        brute.insert(subgroup_closure(g, gens).elements);
    }
    std::set<std::vector<int>> listed;
    for (const auto& h : subgroups_of(g)) {
        CHECK(check_subgroup(g, h).empty());
        listed.insert(h.elements);
    }
    CHECK(listed == brute);
}

TEST_CASE("isomorphism search") {
    const FiniteGroup z6 = builtin_group("cyclic:6");
    CHECK(find_isomorphisms(z6, z6).size() == 2);
    CHECK(find_isomorphisms(z6, builtin_group("sym:3")).empty());
    CHECK(find_isomorphisms(builtin_group("dihedral:3"), builtin_group("sym:3")).size() == 6);
    const FiniteGroup d4 = builtin_group("dihedral:4");
    const auto autos = find_isomorphisms(d4, d4);
    CHECK(autos.size() == 8);
    for (const auto& a : autos) {
        CHECK(is_isomorphism(d4, d4, a.map));
        CHECK(is_isomorphism(d4, d4, inverse(a).map));
        std::vector<int> id(d4.order());
        std::iota(id.begin(), id.end(), 0);
        CHECK(compose(a, inverse(a)).map == id);
    }
}

TEST_CASE("isomorphism search is independent of the worker count") {
    const FiniteGroup x = builtin_group("product:dihedral:3,dihedral:3");
    IsoSearch one, four;
    four.workers = 4;
    CHECK(find_isomorphisms(x, x, one) == find_isomorphisms(x, x, four));
}

TEST_CASE("property: permuting generators yields an isomorphic group") {
    std::mt19937_64 rng(5);
    std::vector<Perm> gens = {perm_from_cycles(5, {{0, 1, 2, 3, 4}}), perm_from_cycles(5, {{0, 1}}),
                              perm_from_cycles(5, {{2, 3}})};
    const FiniteGroup ref = group_from_generators(5, gens);
    CHECK(ref.order() == 120);
    for (int trial = 0; trial < 3; ++trial) {
        std::shuffle(gens.begin(), gens.end(), rng);
        const FiniteGroup g = group_from_generators(5, gens);
        CHECK(g.order() == ref.order());
        IsoSearch one;
        one.accept = [](const std::vector<int>&) { return true; };
        CHECK_FALSE(find_isomorphisms(g, ref, one).empty());
    }
}

TEST_CASE("direct products and permutations") {
    const FiniteGroup p = direct_product(builtin_group("cyclic:2"), builtin_group("cyclic:3"));
    CHECK(p.order() == 6);
    CHECK(find_isomorphisms(p, builtin_group("cyclic:6")).size() == 2);
    const Perm a = perm_from_cycles(4, {{0, 1, 2}});
    CHECK(perm_compose(a, perm_inverse(a)) == Perm{0, 1, 2, 3});
    // (p*q)(i) = p(q(i))
    const Perm q = perm_from_cycles(4, {{0, 3}});
    CHECK(perm_compose(a, q)[0] == a[q[0]]);
}

}  // TEST_SUITE
