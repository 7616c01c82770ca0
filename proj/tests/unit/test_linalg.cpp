#include <doctest.h>

#include <numeric>
#include <random>

#include "bicross/linalg.hpp"

using namespace bicross;

namespace {

LinearMap perm_map(std::vector<std::size_t> p) { return LinearMap::from_permutation(p); }

LinearMap random_small(std::mt19937_64& rng, std::size_t n, int density_pct) {
    std::uniform_int_distribution<int> coin(0, 99), val(-3, 3);
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (coin(rng) < density_pct) e.emplace_back(i, j, Rational(val(rng), 1 + coin(rng) % 3));
    return LinearMap::from_entries(n, n, e);
}

bool is_zero_map(const LinearMap& a) { return a.nnz() == 0; }

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("rationals stay reduced and print with an explicit denominator") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0, 7).str() == "0/1");
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK_THROWS_AS(Rational::parse("x/2"), SpecError);
    CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(2), ArithmeticOverflow);
}

TEST_CASE("tensor of identities and the flip") {
    CHECK(tensor(LinearMap::identity(2), LinearMap::identity(3)) == LinearMap::identity(6));
    const LinearMap flip = perm_map({1, 0});
    CHECK(tensor(flip, LinearMap::identity(1)) == flip);
}

TEST_CASE("a permutation tensored with itself acts on e_i(x)e_j as (Pe_i)(x)(Pe_j)") {
    const LinearMap p = perm_map({1, 0});
    const LinearMap pp = tensor(p, p);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const std::size_t want = (1 - i) * 2 + (1 - j);
            CHECK(apply(pp, SparseVec::unit(i * 2 + j)) == SparseVec::unit(want));
        }
}

TEST_CASE("tensor is associative on entry sets") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const LinearMap a = random_small(rng, 2, 60), b = random_small(rng, 3, 50), c = random_small(rng, 2, 60);
        CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    }
}

TEST_CASE("compose, inverse and permutations") {
    std::mt19937_64 rng(11);
    std::vector<std::size_t> p(9);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    const LinearMap P = perm_map(p);
    CHECK(compose(LinearMap::identity(9), P) == P);
    CHECK(compose(P, inverse(P)) == LinearMap::identity(9));
    CHECK(P.as_permutation() == p);
    CHECK(rank(P) == 9);
    const LinearMap singular = LinearMap::from_entries(2, 2, {{0, 0, 1}, {0, 1, 2}});
    CHECK(rank(singular) == 1);
    CHECK_THROWS_AS(inverse(singular), ShapeError);
    CHECK(transpose(P) == inverse(P));
}

TEST_CASE("random invertible rational matrices invert exactly") {
    std::mt19937_64 rng(3);
    int inverted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const LinearMap a = random_small(rng, 5, 45);
        if (rank(a) < 5) continue;
        ++inverted;
        CHECK(compose(inverse(a), a) == LinearMap::identity(5));
        CHECK(compose(a, inverse(a)) == LinearMap::identity(5));
    }
    CHECK(inverted > 5);
}

TEST_CASE("minimal polynomials of small operators") {
    CHECK(minimal_polynomial(LinearMap::identity(4)) == Polynomial({-1, 1}));
    CHECK(minimal_polynomial(perm_map({1, 2, 0})) == Polynomial::x_pow_minus_one(3));
    // Disjoint 2- and 3-cycles: lcm(λ²−1, λ³−1) = (λ−1)(λ+1)(λ²+λ+1).
    const Polynomial p = minimal_polynomial(perm_map({1, 0, 3, 4, 2}));
    CHECK(p == lcm(Polynomial::x_pow_minus_one(2), Polynomial::x_pow_minus_one(3)));
    CHECK(p.degree() == 4);
    // A nilpotent Jordan block.
    const LinearMap j = LinearMap::from_entries(3, 3, {{0, 1, 1}, {1, 2, 1}});
    CHECK(minimal_polynomial(j) == Polynomial::monomial(3));
}

TEST_CASE("property: the minimal polynomial annihilates and has minimal degree") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const LinearMap a = random_small(rng, n, 40);
        const Polynomial p = minimal_polynomial(a);
        REQUIRE(p.leading() == Rational(1));
        CHECK(is_zero_map(evaluate(p, a)));
        // I, a, ..., a^{deg-1} are linearly independent, so nothing of lower degree annihilates a.
        const std::size_t deg = static_cast<std::size_t>(p.degree());
        std::vector<SparseVec> cols;
        for (std::size_t k = 0; k < deg; ++k) {
            const LinearMap ak = power(a, static_cast<unsigned>(k));
            Accumulator acc;
            for (const auto& [r, c, v] : ak.entries()) acc.add(r * n + c, v);
            cols.push_back(acc.take());
        }
        CHECK(rank(LinearMap(n * n, cols)) == deg);
        for (std::size_t i = 0; i < n; ++i) {
            const Polynomial q = krylov_annihilator(a, SparseVec::unit(i));
            CHECK(p.divmod(q).second.is_zero());
        }
    }
}

TEST_CASE("property: cycle-based and Krylov minimal polynomials agree on permutations") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::size_t> p(3 + trial % 9);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        const LinearMap P = perm_map(p);
        CHECK(minimal_polynomial(P) == minimal_polynomial_krylov(P));
        const auto cyc = cycle_structure(P);
        CHECK(std::accumulate(cyc.begin(), cyc.end(), std::size_t{0}) == p.size());
    }
}

TEST_CASE("cycle structure") {
    CHECK(cycle_structure(LinearMap::identity(5)) == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(cycle_structure(perm_map({1, 0, 3, 4, 2})) == std::vector<std::size_t>{2, 3});
    const auto h = cycle_histogram({1, 2, 2, 4});
    CHECK(h.at(2) == 2);
    CHECK_THROWS_AS(cycle_structure(LinearMap::from_entries(2, 2, {{0, 0, 2}, {1, 1, 1}})), NotPermutation);
}

TEST_CASE("polynomial arithmetic") {
    const Polynomial a({-1, 0, 1});  // λ²−1
    const Polynomial b({1, 1});      // λ+1
    const auto [q, r] = a.divmod(b);
    CHECK(q == Polynomial({-1, 1}));
    CHECK(r.is_zero());
    CHECK(gcd(a, Polynomial({1, 0, 1})) == Polynomial({1}));
    CHECK(a * b == Polynomial({-1, -1, 1, 1}));
}

}  // TEST_SUITE
