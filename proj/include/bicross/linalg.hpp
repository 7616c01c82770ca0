#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bicross/rational.hpp"

namespace bicross {

// Flattened basis index. Tensor products use leftmost-major order:
// e_i ⊗ e_j in V⊗W has key i*dim(W) + j.
using Key = std::uint64_t;

struct Term {
    Key key;
    Rational coef;
    friend bool operator==(const Term& a, const Term& b) { return a.key == b.key && a.coef == b.coef; }
};

// Sorted by key, no stored zeros.
class SparseVec {
public:
    SparseVec() = default;
    explicit SparseVec(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}
    static SparseVec unit(Key k, Rational c = 1) {
        SparseVec v;
        if (!c.is_zero()) v.terms_.push_back({k, c});
        return v;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Rational coef(Key k) const;
    std::optional<Term> single() const {
        if (terms_.size() == 1) return terms_.front();
        return std::nullopt;
    }
    SparseVec& operator+=(const SparseVec& o);
    SparseVec& operator-=(const SparseVec& o);
    SparseVec& operator*=(const Rational& c);
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    std::vector<Term> terms_;
};

// Collects unsorted contributions; take() sorts, merges equal keys and drops zeros.
class Accumulator {
public:
    void add(Key k, const Rational& c) {
        if (!c.is_zero()) buf_.push_back({k, c});
    }
    void add(const SparseVec& v, const Rational& scale = 1);
    void clear() { buf_.clear(); }
    bool empty() const { return buf_.empty(); }
    SparseVec take();
    void take_into(SparseVec& out);

private:
    std::vector<Term> buf_;
};

// Column-stored sparse matrix: column j is the image of basis vector e_j.
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}
    LinearMap(std::size_t rows, std::vector<SparseVec> columns);

    static LinearMap identity(std::size_t n);
    // e_j -> e_{perm[j]}
    static LinearMap from_permutation(const std::vector<std::size_t>& perm);
    static LinearMap from_entries(std::size_t rows, std::size_t cols,
                                  const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const SparseVec& column(std::size_t j) const { return columns_[j]; }
    void set_column(std::size_t j, SparseVec v) { columns_[j] = std::move(v); }
    Rational at(std::size_t i, std::size_t j) const { return columns_[j].coef(i); }
    std::size_t nnz() const;

    // (row, col, value) sorted by row then col.
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries() const;

    // Basis permutation underlying this map, if it is a 0/1 permutation matrix.
    std::optional<std::vector<std::size_t>> as_permutation() const;

    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<SparseVec> columns_;
};

SparseVec apply(const LinearMap& a, const SparseVec& v);
LinearMap compose(const LinearMap& a, const LinearMap& b);  // a ∘ b
LinearMap tensor(const LinearMap& a, const LinearMap& b);
LinearMap transpose(const LinearMap& a);
LinearMap power(const LinearMap& a, unsigned k);
LinearMap add(const LinearMap& a, const LinearMap& b, const Rational& bscale = 1);
std::size_t rank(const LinearMap& a);
// Exact inverse; throws ShapeError if singular or non-square.
LinearMap inverse(const LinearMap& a);

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);  // lowest degree first
    static Polynomial monomial(unsigned deg, Rational c = 1);
    static Polynomial x_pow_minus_one(unsigned m);  // λ^m − 1

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& leading() const { return c_.back(); }
    Polynomial monic() const;

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    // Quotient and remainder.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

Polynomial gcd(Polynomial a, Polynomial b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);
LinearMap evaluate(const Polynomial& p, const LinearMap& a);

// Monic minimal polynomial. Permutation matrices go through cycle lengths,
// everything else through Krylov sequences.
Polynomial minimal_polynomial(const LinearMap& a);
Polynomial minimal_polynomial_krylov(const LinearMap& a);
// Monic annihilator of v under a: lowest-degree p with p(a)v = 0.
Polynomial krylov_annihilator(const LinearMap& a, const SparseVec& v);

// Sorted cycle lengths of a permutation matrix; throws NotPermutation otherwise.
std::vector<std::size_t> cycle_structure(const LinearMap& a);
std::map<std::size_t, std::size_t> cycle_histogram(const std::vector<std::size_t>& lengths);

}  // namespace bicross
