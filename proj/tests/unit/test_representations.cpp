#include <doctest.h>

#include <numeric>
#include <random>

#include "bicross/quantum_double.hpp"
#include "bicross/representations.hpp"
#include "fixtures.hpp"

using namespace bicross;
using fixtures::first_failure;

namespace {

LinearMap flip_map(std::size_t n) {
    std::vector<std::size_t> p(n * n);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = (k % n) * n + k / n;
    return LinearMap::from_permutation(p);
}

}  // namespace

TEST_SUITE("representations") {

TEST_CASE("trivial and Schrodinger modules satisfy the bimodule conditions") {
    for (const MatchedPair* mp : {&fixtures::s3(), &fixtures::z2z2(), &fixtures::z6z6()}) {
        CHECK(first_failure(verify_bicrossed_bimodule(*mp, trivial_bimodule(*mp))).empty());
        CHECK(first_failure(verify_bicrossed_bimodule(*mp, schrodinger_module(*mp))).empty());
    }
}

TEST_CASE("a corrupted M-grading fails the <t>w> condition") {
    const MatchedPair& mp = fixtures::z6z6();
    BicrossedBimodule w = schrodinger_module(mp);
    const std::size_t i = 7;
    w.grade_M[i] = (w.grade_M[i] + 1) % mp.nM();
    const Report r = verify_bicrossed_bimodule(mp, w, false);
    const CheckResult* c = r.find("<t>w> = t<w>(t<|w|)^-1");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->passed);
    REQUIRE(c->counterexample);
    REQUIRE(c->counterexample->indices.size() == 2);
    // Either e_i itself or the basis vector some t sends onto it.
    const auto t = static_cast<int>(c->counterexample->indices[0]);
    const std::size_t k = c->counterexample->indices[1];
    CHECK((k == i || w.act_M[t].column(k).coef(i) != Rational(0)));
}

TEST_CASE("module_from_double_action inverts the induced action") {
    for (const MatchedPair* mp : {&fixtures::s3(), &fixtures::z2z2(), &fixtures::z6z6()}) {
        const BicrossedBimodule W = schrodinger_module(*mp);
        CHECK(module_from_double_action(*mp, induced_action(*mp, W)) == W);
        const BicrossedBimodule T = trivial_bimodule(*mp);
        CHECK(module_from_double_action(*mp, induced_action(*mp, T)) == T);
    }
}

TEST_CASE("the left-regular D(H) action gives a valid bimodule") {
    for (const MatchedPair* mp : {&fixtures::s3(), &fixtures::z2z2()}) {
        const HopfAlgebraData D = build_double_bicross(*mp);
        const auto reg = left_regular_action(D);
        CHECK(first_failure(verify_algebra_action(D, reg)).empty());
        const BicrossedBimodule W = module_from_double_action(*mp, reg);
        CHECK(W.dim == D.dim);
        CHECK(first_failure(verify_bicrossed_bimodule(*mp, W)).empty());
        CHECK(first_failure(verify_algebra_action(D, induced_action(*mp, W))).empty());
    }
}

TEST_CASE("both groups trivial: only the trivial module") {
    const MatchedPair mp = fixtures::pair_with_orders("cyclic:1", 1, 1);
    const HopfAlgebraData D = build_double_bicross(mp);
    CHECK(D.dim == 1);
    CHECK(module_from_double_action(mp, left_regular_action(D)) == trivial_bimodule(mp));
}

TEST_CASE("the Schrodinger action from structure constants matches the closed forms") {
    for (const MatchedPair* mp : {&fixtures::s3(), &fixtures::z6z6()}) {
        CHECK(first_failure(verify_schrodinger(*mp)).empty());
        const HopfAlgebraData H = build_H(*mp);
        CHECK(schrodinger_action_direct(H) == schrodinger_action_closed(*mp));
        CHECK(induced_action(*mp, schrodinger_module(*mp)) == schrodinger_action_closed(*mp));
    }
}

TEST_CASE("H acting on itself: (s(x)d_u)>(t(x)d_v) closed form") {
    const MatchedPair& mp = fixtures::z6z6();
    const auto L = h_action(mp, schrodinger_module(mp));
    for (int s = 0; s < mp.nM(); ++s)
        for (int u = 0; u < mp.nG(); ++u)
            for (int t = 0; t < mp.nM(); ++t)
                for (int v = 0; v < mp.nG(); ++v) {
                    const int su = mp.rt(s, u);
                    const bool fires = mp.gmul(u, v) == mp.lt(t, v);
                    const SparseVec want =
                        fires ? SparseVec::unit(bicross_index(mp, mp.mmul(mp.mmul(s, t), mp.minv(su)), mp.lt(su, v)))
                              : SparseVec{};
                    CHECK(L[bicross_index(mp, s, u)].column(bicross_index(mp, t, v)) == want);
                }
}

TEST_CASE("Schrodinger gradings") {
    SUBCASE("M trivial") {
        const MatchedPair mp = fixtures::pair_with_orders("sym:3", 6, 1);
        const BicrossedBimodule W = schrodinger_module(mp);
        for (int v = 0; v < mp.nG(); ++v) {
            CHECK(W.grade_G[v] == 0);
            CHECK(W.grade_M[v] == 0);
            for (int u = 0; u < mp.nG(); ++u)
                CHECK(W.act_G[u].column(v) == SparseVec::unit(mp.gmul(mp.ginv(u), v)));
        }
    }
    SUBCASE("Z6Z6: |1_M (x) d_1| = 4 and <1_M (x) d_1> = 1_M") {
        const MatchedPair& mp = fixtures::z6z6();
        const auto c = fixtures::cyclic_coords(mp);
        const BicrossedBimodule W = schrodinger_module(mp);
        const std::size_t i = bicross_index(mp, c.M(1), c.G(1));
        CHECK(W.grade_G[i] == c.G(4));
        CHECK(W.grade_M[i] == c.M(1));
    }
}

TEST_CASE("braiding") {
    SUBCASE("M trivial gives the flip") {
        const MatchedPair mp = fixtures::pair_with_orders("sym:3", 6, 1);
        const BicrossedBimodule W = schrodinger_module(mp);
        CHECK(braiding(mp, W, W) == flip_map(W.dim));
    }
    SUBCASE("Z6Z6 parity table on every basis vector") {
        const MatchedPair& mp = fixtures::z6z6();
        const auto c = fixtures::cyclic_coords(mp);
        const BicrossedBimodule W = schrodinger_module(mp);
        const LinearMap psi = braiding(mp, W, W);
        const auto perm = psi.as_permutation();
        REQUIRE(perm);
        auto idx = [&](int s, int u) { return bicross_index(mp, c.M(s), c.G(u)); };
        const std::size_t d = W.dim;
        for (int s = 0; s < 6; ++s)
            for (int u = 0; u < 6; ++u)
                for (int t = 0; t < 6; ++t)
                    for (int v = 0; v < 6; ++v) {
                        const int nv = s % 2 ? -v : v, nu = t % 2 ? u + 2 * v : u;
                        CHECK((*perm)[idx(s, u) * d + idx(t, v)] == idx(t, nv) * d + idx(s, nu));
                    }
        // Rows of the table: s even t odd, and s odd t even.
        CHECK((*perm)[idx(2, 1) * d + idx(3, 2)] == idx(3, 2) * d + idx(2, 5));
        CHECK((*perm)[idx(1, 4) * d + idx(2, 2)] == idx(2, -2) * d + idx(1, 4));
    }
    SUBCASE("four constructions of the braiding agree") {
        for (const MatchedPair* mp : {&fixtures::s3(), &fixtures::z6z6()}) {
            const BicrossedBimodule W = schrodinger_module(*mp);
            const LinearMap psi = braiding(*mp, W, W);
            CHECK(psi == braiding_dual_basis(*mp, W, W));
            CHECK(psi == canonical_braiding(build_H(*mp)));
            CHECK(psi == schrodinger_braiding_closed(*mp));
        }
    }
    SUBCASE("an unverified module is refused") {
        const MatchedPair& mp = fixtures::s3();
        BicrossedBimodule W = schrodinger_module(mp);
        W.grade_G[1] = (W.grade_G[1] + 1) % mp.nG();
        CHECK_THROWS_AS(braiding(mp, W, W), ModuleUnverified);
    }
}

TEST_CASE("Z6Z6 braiding order and block shifts") {
    const MatchedPair& mp = fixtures::z6z6();
    const auto c = fixtures::cyclic_coords(mp);
    const BicrossedBimodule W = schrodinger_module(mp);
    const LinearMap psi = braiding(mp, W, W);
    CHECK(power(psi, 12) == LinearMap::identity(psi.cols()));
    CHECK(minimal_polynomial(psi) == Polynomial({-1, 0, -1, 0, 0, 0, 1, 0, 1}));
    const LinearMap shift = block_shift(mp, psi);
    CHECK(minimal_polynomial(shift) == Polynomial({-1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1, 0, 1}));
    CHECK(block_order(mp, shift, c.M(1), c.M(0)) == 4);
    CHECK(block_order(mp, shift, c.M(0), c.M(1)) == 8);
    CHECK(block_order(mp, shift, c.M(1), c.M(1)) == 6);
    CHECK(block_order(mp, shift, c.M(0), c.M(0)) == 2);
}

TEST_CASE("Yang-Baxter") {
    CHECK(first_failure(ybe_check(flip_map(3))).empty());
    std::mt19937_64 rng(1);
    std::vector<std::size_t> p(9);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    const Report bad = ybe_check(LinearMap::from_permutation(p));
    const CheckResult* c = fixtures::failed_check(bad);
    REQUIRE(c != nullptr);
    REQUIRE(c->counterexample);
    CHECK(c->counterexample->indices.size() == 3);
    const MatchedPair& mp = fixtures::s3();
    const BicrossedBimodule W = schrodinger_module(mp);
    CHECK(first_failure(ybe_check(braiding(mp, W, W))).empty());
    const BicrossedBimodule T = trivial_bimodule(mp);
    const BicrossedBimodule WT = tensor_bimodule(mp, W, T);
    CHECK(first_failure(verify_bicrossed_bimodule(mp, WT)).empty());
    CHECK(first_failure(ybe_check(braiding(mp, WT, WT))).empty());
}

TEST_CASE("chi to and from D(X)-modules") {
    SUBCASE("trivial") {
        const MatchedPair& mp = fixtures::s3();
        const DXModule v = chi_to_DX(mp, trivial_bimodule(mp));
        CHECK(v.dim == 1);
        CHECK(v.grade_X == std::vector<int>{0});
        for (const auto& a : v.act_X) CHECK(a == LinearMap::identity(1));
    }
    for (const MatchedPair* mp : {&fixtures::s3(), &fixtures::z6z6()}) {
        const BicrossedBimodule W = schrodinger_module(*mp);
        const DXModule v = chi_to_DX(*mp, W);
        CHECK(first_failure(verify_dx_module(mp->X, v)).empty());
        CHECK(chi_from_DX(*mp, v) == W);
        const auto act = dx_induced_action(mp->X, v);
        CHECK(first_failure(verify_algebra_action(build_group_double(mp->X).algebra, act)).empty());
    }
}

TEST_CASE("the map c") {
    SUBCASE("trivial modules give the identity") {
        const MatchedPair& mp = fixtures::z6z6();
        const BicrossedBimodule T = trivial_bimodule(mp);
        CHECK(c_map(mp, T, T) == LinearMap::identity(1));
    }
    SUBCASE("trivial actions and trivial G give the identity") {
        const MatchedPair mp = fixtures::pair_with_orders("cyclic:6", 1, 6);
        const BicrossedBimodule W = schrodinger_module(mp);
        CHECK(c_map(mp, W, W) == LinearMap::identity(W.dim * W.dim));
    }
    for (const MatchedPair* mp : {&fixtures::s3(), &fixtures::z6z6()}) {
        const BicrossedBimodule W = schrodinger_module(*mp);
        const LinearMap c = c_map(*mp, W, W);
        CHECK(c.as_permutation());
        CHECK(first_failure(verify_c_map(*mp, W, W)).empty());
        CHECK(verify_braiding_naturality(*mp, W, W).passed);
    }
    const MatchedPair& s3 = fixtures::s3();
    const BicrossedBimodule W = schrodinger_module(s3), T = trivial_bimodule(s3);
    CHECK(verify_c_coherence(s3, W, W, W).passed);
    CHECK(verify_c_coherence(s3, W, T, W).passed);
}

TEST_CASE("reverse D(X) braiding inverts the forward one on swapped factors") {
    const MatchedPair& mp = fixtures::s3();
    const DXModule v = chi_to_DX(mp, schrodinger_module(mp));
    const LinearMap fwd = dx_braiding(mp.X, v, v), rev = dx_braiding(mp.X, v, v, true);
    CHECK(compose(fwd, rev) == LinearMap::identity(v.dim * v.dim));
    CHECK(tensor_dx(mp.X, v, v).dim == v.dim * v.dim);
    CHECK(first_failure(verify_dx_module(mp.X, tensor_dx(mp.X, v, v))).empty());
}

}  // TEST_SUITE
