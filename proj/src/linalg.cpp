#include "bicross/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "bicross/errors.hpp"

namespace bicross {

Rational SparseVec::coef(Key k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, Key key) { return t.key < key; });
    if (it != terms_.end() && it->key == k) return it->coef;
    return 0;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, const Rational& bs) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].key < b[j].key)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].key < a[i].key) {
            out.push_back({b[j].key, b[j].coef * bs});
            ++j;
        } else {
            Rational c = a[i].coef + b[j].coef * bs;
            if (!c.is_zero()) out.push_back({a[i].key, c});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

SparseVec& SparseVec::operator+=(const SparseVec& o) {
    terms_ = merge_terms(terms_, o.terms_, 1);
    return *this;
}

SparseVec& SparseVec::operator-=(const SparseVec& o) {
    terms_ = merge_terms(terms_, o.terms_, -1);
    return *this;
}

SparseVec& SparseVec::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

std::string SparseVec::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << ", ";
        first = false;
        os << t.key << ':' << t.coef;
    }
    os << '}';
    return os.str();
}

void Accumulator::add(const SparseVec& v, const Rational& scale) {
    if (scale.is_zero()) return;
    for (const auto& t : v) buf_.push_back({t.key, scale == Rational(1) ? t.coef : t.coef * scale});
}

void Accumulator::take_into(SparseVec& out) {
    std::sort(buf_.begin(), buf_.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
    std::vector<Term> merged;
    merged.reserve(buf_.size());
    for (std::size_t i = 0; i < buf_.size();) {
        Key k = buf_[i].key;
        Rational c = buf_[i].coef;
        std::size_t j = i + 1;
        for (; j < buf_.size() && buf_[j].key == k; ++j) c += buf_[j].coef;
        if (!c.is_zero()) merged.push_back({k, c});
        i = j;
    }
    buf_.clear();
    out = SparseVec(std::move(merged));
}

SparseVec Accumulator::take() {
    SparseVec out;
    take_into(out);
    return out;
}

LinearMap::LinearMap(std::size_t rows, std::vector<SparseVec> columns)
    : rows_(rows), cols_(columns.size()), columns_(std::move(columns)) {
    for (const auto& c : columns_)
        for (const auto& t : c)
            if (t.key >= rows_) throw ShapeError("linear map entry out of range");
}

LinearMap LinearMap::identity(std::size_t n) {
    LinearMap m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.columns_[j] = SparseVec::unit(j);
    return m;
}

LinearMap LinearMap::from_permutation(const std::vector<std::size_t>& perm) {
    LinearMap m(perm.size(), perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (perm[j] >= perm.size()) throw ShapeError("permutation image out of range");
        m.columns_[j] = SparseVec::unit(perm[j]);
    }
    return m;
}

LinearMap LinearMap::from_entries(std::size_t rows, std::size_t cols,
                                  const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& entries) {
    std::vector<Accumulator> acc(cols);
    for (const auto& [r, c, v] : entries) {
        if (r >= rows || c >= cols) throw ShapeError("matrix entry out of range");
        acc[c].add(r, v);
    }
    LinearMap m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) m.columns_[j] = acc[j].take();
    return m;
}

std::size_t LinearMap::nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
}

std::vector<std::tuple<std::size_t, std::size_t, Rational>> LinearMap::entries() const {
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> out;
    out.reserve(nnz());
    for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& t : columns_[j]) out.emplace_back(t.key, j, t.coef);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    return out;
}

std::optional<std::vector<std::size_t>> LinearMap::as_permutation() const {
    if (rows_ != cols_) return std::nullopt;
    std::vector<std::size_t> perm(cols_);
    std::vector<char> hit(rows_, 0);
    for (std::size_t j = 0; j < cols_; ++j) {
        auto t = columns_[j].single();
        if (!t || t->coef != Rational(1) || hit[t->key]) return std::nullopt;
        hit[t->key] = 1;
        perm[j] = t->key;
    }
    return perm;
}

SparseVec apply(const LinearMap& a, const SparseVec& v) {
    Accumulator acc;
    for (const auto& t : v) {
        if (t.key >= a.cols()) throw ShapeError("vector index outside map domain");
        acc.add(a.column(t.key), t.coef);
    }
    return acc.take();
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
    if (a.cols() != b.rows()) throw ShapeError("compose: inner dimensions differ");
    LinearMap out(a.rows(), b.cols());
    Accumulator acc;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (const auto& t : b.column(j)) acc.add(a.column(t.key), t.coef);
        out.set_column(j, acc.take());
    }
    return out;
}

LinearMap tensor(const LinearMap& a, const LinearMap& b) {
    LinearMap out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::vector<Term> terms;
            terms.reserve(a.column(i).size() * b.column(j).size());
            for (const auto& x : a.column(i))
                for (const auto& y : b.column(j)) terms.push_back({x.key * b.rows() + y.key, x.coef * y.coef});
            out.set_column(i * b.cols() + j, SparseVec(std::move(terms)));
        }
    }
    return out;
}

LinearMap transpose(const LinearMap& a) {
    std::vector<std::vector<Term>> cols(a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (const auto& t : a.column(j)) cols[t.key].push_back({j, t.coef});
    LinearMap out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) out.set_column(i, SparseVec(std::move(cols[i])));
    return out;
}

LinearMap power(const LinearMap& a, unsigned k) {
    if (a.rows() != a.cols()) throw ShapeError("power of non-square map");
    LinearMap r = LinearMap::identity(a.rows());
    LinearMap base = a;
    while (k) {
        if (k & 1u) r = compose(base, r);
        k >>= 1u;
        if (k) base = compose(base, base);
    }
    return r;
}

LinearMap add(const LinearMap& a, const LinearMap& b, const Rational& bscale) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("add: shapes differ");
    LinearMap out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        SparseVec c = a.column(j);
        SparseVec d = b.column(j);
        d *= bscale;
        out.set_column(j, c + d);
    }
    return out;
}

namespace {

// Echelon basis with insertion-order reduction: row i is reduced against
// every earlier pivot, so a single forward sweep fully reduces a vector.
class Echelon {
public:
    // Reduces v in place; if track is non-null, mirrors the row operations on it.
    void reduce(SparseVec& v, std::vector<Rational>* track) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rational c = v.coef(pivots_[r]);
            if (c.is_zero()) continue;
            Rational f = c / rows_[r].coef(pivots_[r]);
            SparseVec sub = rows_[r];
            sub *= f;
            v -= sub;
            if (track) {
                const auto& tr = tracks_[r];
                if (track->size() < tr.size()) track->resize(tr.size());
                for (std::size_t i = 0; i < tr.size(); ++i) (*track)[i] -= tr[i] * f;
            }
        }
    }
    void insert(SparseVec v, std::vector<Rational> track) {
        pivots_.push_back(v.terms().front().key);
        rows_.push_back(std::move(v));
        tracks_.push_back(std::move(track));
    }
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<Key> pivots_;
    std::vector<SparseVec> rows_;
    std::vector<std::vector<Rational>> tracks_;
};

}  // namespace

std::size_t rank(const LinearMap& a) {
    Echelon e;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        SparseVec v = a.column(j);
        e.reduce(v, nullptr);
        if (!v.empty()) e.insert(std::move(v), {});
    }
    return e.size();
}

LinearMap inverse(const LinearMap& a) {
    if (a.rows() != a.cols()) throw ShapeError("inverse of non-square map");
    const std::size_t n = a.cols();
    // Monomial fast path: every column a single scaled basis vector, distinct rows.
    {
        bool monomial = true;
        std::vector<char> hit(n, 0);
        for (std::size_t j = 0; j < n && monomial; ++j) {
            auto t = a.column(j).single();
            if (!t || hit[t->key]) monomial = false;
            else hit[t->key] = 1;
        }
        if (monomial) {
            LinearMap out(n, n);
            for (std::size_t j = 0; j < n; ++j) {
                auto t = *a.column(j).single();
                out.set_column(t.key, SparseVec::unit(j, Rational(1) / t.coef));
            }
            return out;
        }
    }
    // Gauss-Jordan on dense rows of [A | I].
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& t : a.column(j)) m[t.key][j] = t.coef;
    for (std::size_t i = 0; i < n; ++i) m[i][n + i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) throw ShapeError("map is singular");
        std::swap(m[p], m[c]);
        Rational inv = Rational(1) / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c].is_zero()) continue;
            Rational f = m[r][c];
            for (std::size_t k = c; k < 2 * n; ++k)
                if (!m[c][k].is_zero()) m[r][k] -= f * m[c][k];
        }
    }
    LinearMap out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Term> col;
        for (std::size_t i = 0; i < n; ++i)
            if (!m[i][n + j].is_zero()) col.push_back({i, m[i][n + j]});
        out.set_column(j, SparseVec(std::move(col)));
    }
    return out;
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::monomial(unsigned deg, Rational c) {
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::x_pow_minus_one(unsigned m) {
    std::vector<Rational> v(m + 1);
    v[0] = -1;
    v[m] += 1;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
    if (c_.empty()) return *this;
    Rational inv = Rational(1) / c_.back();
    std::vector<Rational> v = c_;
    for (auto& x : v) x *= inv;
    return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = c_;
    if (r.size() < d.c_.size()) return {Polynomial{}, *this};
    std::vector<Rational> q(r.size() - d.c_.size() + 1);
    Rational lead_inv = Rational(1) / d.c_.back();
    for (std::size_t i = q.size(); i-- > 0;) {
        Rational f = r[i + d.c_.size() - 1] * lead_inv;
        q[i] = f;
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < d.c_.size(); ++j) r[i + j] -= f * d.c_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

std::string Polynomial::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c.is_zero()) continue;
        bool neg = c < Rational(0);
        Rational mag = neg ? -c : c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (i == 0 || mag != Rational(1)) os << mag;
        if (i >= 1) os << "x";
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return (a * b).divmod(gcd(a, b)).first.monic();
}

LinearMap evaluate(const Polynomial& p, const LinearMap& a) {
    const std::size_t n = a.rows();
    LinearMap acc(n, n);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc = compose(a, acc);
        LinearMap c = LinearMap::identity(n);
        for (std::size_t j = 0; j < n; ++j) {
            SparseVec col = c.column(j);
            col *= p.coeffs()[i];
            c.set_column(j, col);
        }
        acc = add(acc, c);
    }
    return acc;
}

Polynomial krylov_annihilator(const LinearMap& a, const SparseVec& v) {
    Echelon e;
    SparseVec w = v;
    for (std::size_t k = 0;; ++k) {
        SparseVec r = w;
        std::vector<Rational> track(k + 1);
        track[k] = 1;
        e.reduce(r, &track);
        if (r.empty()) return Polynomial(std::move(track)).monic();
        e.insert(std::move(r), std::move(track));
        w = apply(a, w);
    }
}

Polynomial minimal_polynomial_krylov(const LinearMap& a) {
    if (a.rows() != a.cols()) throw ShapeError("minimal polynomial of non-square map");
    const std::size_t n = a.rows();
    if (n == 0) return Polynomial({Rational(1)});
    std::vector<Term> ones;
    for (std::size_t i = 0; i < n; ++i) ones.push_back({i, 1});
    Polynomial result = krylov_annihilator(a, SparseVec(std::move(ones)));
    // Basis vectors already met as a Krylov iterate have annihilators dividing an earlier one.
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n && result.degree() < static_cast<int>(n); ++i) {
        if (seen[i]) continue;
        SparseVec w = SparseVec::unit(i);
        Polynomial p = krylov_annihilator(a, w);
        for (int k = 0; k < p.degree(); ++k) {
            if (auto t = w.single()) seen[t->key] = 1;
            w = apply(a, w);
        }
        result = lcm(result, p);
    }
    return result;
}

std::vector<std::size_t> cycle_structure(const LinearMap& a) {
    auto perm = a.as_permutation();
    if (!perm) throw NotPermutation("map is not a permutation matrix");
    std::vector<std::size_t> lengths;
    std::vector<char> seen(perm->size(), 0);
    for (std::size_t i = 0; i < perm->size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = (*perm)[j]) {
            seen[j] = 1;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

std::map<std::size_t, std::size_t> cycle_histogram(const std::vector<std::size_t>& lengths) {
    std::map<std::size_t, std::size_t> h;
    for (auto l : lengths) ++h[l];
    return h;
}

Polynomial minimal_polynomial(const LinearMap& a) {
    if (a.rows() != a.cols()) throw ShapeError("minimal polynomial of non-square map");
    if (a.as_permutation()) {
        Polynomial result({Rational(1)});
        auto hist = cycle_histogram(cycle_structure(a));
        for (const auto& [len, count] : hist) result = lcm(result, Polynomial::x_pow_minus_one(len));
        return result;
    }
    return minimal_polynomial_krylov(a);
}

}  // namespace bicross
