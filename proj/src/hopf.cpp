#include "bicross/hopf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <random>
#include <sstream>

#include "bicross/errors.hpp"
#include "bicross/parallel.hpp"

namespace bicross {

std::string BasisLabel::str() const {
    std::ostringstream os;
    switch (kind) {
        case LabelKind::BicrossH: os << "s" << a << "*d_u" << b; break;
        case LabelKind::BicrossDual: os << "d_s" << a << "*u" << b; break;
        case LabelKind::DoublePair: os << "(" << a << "|" << b << ")"; break;
        case LabelKind::GroupDouble: os << "d_x" << a << "*y" << b; break;
        case LabelKind::GroupElement: os << "g" << a; break;
        case LabelKind::FunctionDelta: os << "d_" << a; break;
        case LabelKind::Opaque: os << "e" << a; break;
    }
    return os.str();
}

std::string truncated(const SparseVec& v, std::size_t max_terms) {
    std::ostringstream os;
    os << '{';
    std::size_t n = 0;
    for (const auto& t : v) {
        if (n) os << ", ";
        if (n == max_terms) {
            os << "... " << v.size() - n << " more";
            break;
        }
        os << t.key << ':' << t.coef;
        ++n;
    }
    os << '}';
    return os.str();
}

void HopfAlgebraData::finalize() {
    right_support.assign(dim, {});
    row_words = (dim + 63) / 64;
    nonzero_bits.assign(dim * row_words, 0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (!product.row_empty(i * dim + j)) {
                right_support[i].push_back(static_cast<std::uint32_t>(j));
                nonzero_bits[i * row_words + (j >> 6)] |= std::uint64_t{1} << (j & 63);
            }
}

SparseVec HopfAlgebraData::multiply(const SparseVec& x, const SparseVec& y) const {
    Accumulator acc;
    for (const auto& tx : x)
        for (const auto& ty : y)
            for (const auto& t : mul(tx.key, ty.key)) acc.add(t.key, t.coef * tx.coef * ty.coef);
    return acc.take();
}

SparseVec HopfAlgebraData::comultiply(const SparseVec& x) const {
    Accumulator acc;
    for (const auto& tx : x)
        for (const auto& t : delta(tx.key)) acc.add(t.key, t.coef * tx.coef);
    return acc.take();
}

Rational HopfAlgebraData::counit_of(const SparseVec& x) const {
    Rational r;
    for (const auto& t : x) r += t.coef * counit[t.key];
    return r;
}

std::string structure_diff(const HopfAlgebraData& a, const HopfAlgebraData& b) {
    if (a.dim != b.dim) return "dimension";
    if (!(a.product == b.product)) {
        for (std::size_t r = 0; r < a.dim * a.dim; ++r)
            if (!(a.product.row_vec(r) == b.product.row_vec(r)))
                return "product at (" + std::to_string(r / a.dim) + "," + std::to_string(r % a.dim) +
                       "): " + truncated(a.product.row_vec(r)) + " vs " + truncated(b.product.row_vec(r));
        return "product";
    }
    if (!(a.coproduct == b.coproduct)) {
        for (std::size_t r = 0; r < a.dim; ++r)
            if (!(a.coproduct.row_vec(r) == b.coproduct.row_vec(r)))
                return "coproduct at " + std::to_string(r) + ": " + truncated(a.coproduct.row_vec(r)) + " vs " +
                       truncated(b.coproduct.row_vec(r));
        return "coproduct";
    }
    if (!(a.unit == b.unit)) return "unit";
    if (a.counit != b.counit) return "counit";
    if (!(a.antipode == b.antipode)) return "antipode";
    if (a.star.has_value() != b.star.has_value()) return "star presence";
    if (a.star && !(*a.star == *b.star)) return "star";
    return {};
}

namespace {

std::uint64_t name_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Either every tuple of a box [0,dim)^arity, or a seed-fixed sample of it.
class TuplePlan {
public:
    TuplePlan(std::size_t dim, std::size_t arity, bool allow_sampling, const CheckOptions& opt,
              const std::string& check)
        : dim_(dim), arity_(arity) {
        std::uint64_t total = ipow(dim, arity);
        if (!allow_sampling || dim <= opt.exhaustive_cap || total <= opt.sample_size) {
            count_ = total;
            return;
        }
        sampled_ = true;
        count_ = opt.sample_size;
        std::mt19937_64 rng(opt.seed ^ name_hash(check));
        samples_.resize(count_ * arity);
        for (auto& s : samples_) s = rng() % dim;
    }
    std::size_t count() const { return count_; }
    bool sampled() const { return sampled_; }
    std::array<std::size_t, 4> tuple(std::size_t i) const {
        std::array<std::size_t, 4> t{};
        if (sampled_) {
            for (std::size_t k = 0; k < arity_; ++k) t[k] = samples_[i * arity_ + k];
        } else {
            for (std::size_t k = arity_; k-- > 0;) {
                t[k] = i % dim_;
                i /= dim_;
            }
        }
        return t;
    }

private:
    std::size_t dim_, arity_;
    std::size_t count_ = 0;
    bool sampled_ = false;
    std::vector<std::size_t> samples_;
};

CheckResult run_check(const std::string& name, const TuplePlan& plan, std::size_t arity, unsigned workers,
                      const std::function<std::optional<Counterexample>(const std::array<std::size_t, 4>&)>& f) {
    CheckResult r;
    r.name = name;
    r.cases = plan.count();
    r.sampled = plan.sampled();
    auto fail = first_failure(plan.count(), workers, [&](std::size_t i) {
        auto t = plan.tuple(i);
        auto cx = f(t);
        if (cx) cx->indices.assign(t.begin(), t.begin() + arity);
        return cx;
    });
    if (fail) {
        r.passed = false;
        r.counterexample = std::move(fail->second);
    }
    return r;
}

std::optional<Counterexample> compare(Accumulator& l, Accumulator& r) {
    thread_local SparseVec a, b;
    l.take_into(a);
    r.take_into(b);
    if (a == b) return std::nullopt;
    return Counterexample{{}, truncated(a), truncated(b)};
}

}  // namespace

Report verify_hopf_axioms(const HopfAlgebraData& h, const CheckOptions& opt) {
    Report rep;
    rep.title = "hopf axioms: " + h.name;
    const std::size_t d = h.dim;
    const unsigned w = opt.workers;

    rep.add(run_check("associativity", TuplePlan(d, 3, true, opt, "associativity"), 3, w, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& p : h.mul(t[0], t[1]))
            for (const auto& q : h.mul(p.key, t[2])) l.add(q.key, p.coef * q.coef);
        for (const auto& p : h.mul(t[1], t[2]))
            for (const auto& q : h.mul(t[0], p.key)) r.add(q.key, p.coef * q.coef);
        return compare(l, r);
    }));

    rep.add(run_check("unit", TuplePlan(d, 1, false, opt, "unit"), 1, w, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& u : h.unit)
            for (const auto& q : h.mul(u.key, t[0])) l.add(q.key, u.coef * q.coef);
        for (const auto& u : h.unit)
            for (const auto& q : h.mul(t[0], u.key)) r.add(q.key, u.coef * q.coef);
        auto cx = compare(l, r);
        if (cx) return cx;
        for (const auto& u : h.unit)
            for (const auto& q : h.mul(u.key, t[0])) l.add(q.key, u.coef * q.coef);
        r.add(t[0], 1);
        return compare(l, r);
    }));

    rep.add(run_check("coassociativity", TuplePlan(d, 1, false, opt, "coassociativity"), 1, w, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& ab : h.delta(t[0])) {
            std::size_t a = ab.key / d, b = ab.key % d;
            for (const auto& a12 : h.delta(a)) l.add(a12.key * d + b, ab.coef * a12.coef);
            for (const auto& b12 : h.delta(b)) r.add(a * d * d + b12.key, ab.coef * b12.coef);
        }
        return compare(l, r);
    }));

    rep.add(run_check("counit", TuplePlan(d, 1, false, opt, "counit"), 1, w, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& ab : h.delta(t[0])) {
            std::size_t a = ab.key / d, b = ab.key % d;
            l.add(b, ab.coef * h.counit[a]);
            r.add(a, ab.coef * h.counit[b]);
        }
        auto cx = compare(l, r);
        if (cx) return cx;
        for (const auto& ab : h.delta(t[0])) l.add(ab.key % d, ab.coef * h.counit[ab.key / d]);
        r.add(t[0], 1);
        return compare(l, r);
    }));

    rep.add(run_check("bialgebra", TuplePlan(d, 2, true, opt, "bialgebra"), 2, w, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& p : h.mul(t[0], t[1]))
            for (const auto& q : h.delta(p.key)) l.add(q.key, p.coef * q.coef);
        // Candidate pairs (x1,y1) come from word-wise AND of x1's nonzero row with the y1 labels.
        thread_local std::vector<std::uint64_t> ymask;
        thread_local std::vector<int> head, next;
        ymask.assign(h.row_words, 0);
        head.resize(d, -1);
        auto dj = h.delta(t[1]);
        next.assign(dj.size(), -1);
        thread_local std::vector<std::pair<std::size_t, std::size_t>> ys;
        ys.clear();
        for (std::size_t k = 0; k < dj.size(); ++k) {
            const std::size_t y1 = dj[k].key / d;
            ys.emplace_back(y1, dj[k].key % d);
            ymask[y1 >> 6] |= std::uint64_t{1} << (y1 & 63);
            next[k] = head[y1];
            head[y1] = static_cast<int>(k);
        }
        for (const auto& x : h.delta(t[0])) {
            const std::size_t x1 = x.key / d, x2 = x.key % d;
            const std::uint64_t* row = h.nonzero_row(x1);
            for (std::size_t w = 0; w < h.row_words; ++w) {
                for (std::uint64_t m = row[w] & ymask[w]; m; m &= m - 1) {
                    const std::size_t y1 = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
                    for (int k = head[y1]; k >= 0; k = next[k]) {
                        const std::size_t y2 = ys[k].second;
                        if (!h.nonzero(x2, y2)) continue;
                        Rational c = x.coef * dj[k].coef;
                        for (const auto& a : h.mul(x1, y1))
                            for (const auto& b : h.mul(x2, y2)) r.add(a.key * d + b.key, c * a.coef * b.coef);
                    }
                }
            }
        }
        for (const auto& [y1, y2] : ys) head[y1] = -1;
        return compare(l, r);
    }));

    rep.add(run_check("counit multiplicative", TuplePlan(d, 2, false, opt, "counit multiplicative"), 2, w,
                      [&](const auto& t) -> std::optional<Counterexample> {
                          Rational l;
                          for (const auto& p : h.mul(t[0], t[1])) l += p.coef * h.counit[p.key];
                          Rational r = h.counit[t[0]] * h.counit[t[1]];
                          if (l == r) return std::nullopt;
                          return Counterexample{{}, l.str(), r.str()};
                      }));

    {
        SparseVec l = h.comultiply(h.unit);
        Accumulator acc;
        for (const auto& a : h.unit)
            for (const auto& b : h.unit) acc.add(a.key * d + b.key, a.coef * b.coef);
        SparseVec r = acc.take();
        if (l == r) rep.add("coproduct of unit", true);
        else rep.fail("coproduct of unit", {{}, truncated(l), truncated(r)});
        Rational e = h.counit_of(h.unit);
        if (e == Rational(1)) rep.add("counit of unit", true);
        else rep.fail("counit of unit", {{}, e.str(), "1/1"});
    }

    rep.add(run_check("antipode", TuplePlan(d, 1, false, opt, "antipode"), 1, w, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& ab : h.delta(t[0])) {
            std::size_t a = ab.key / d, b = ab.key % d;
            for (const auto& sa : h.antipode.column(a))
                for (const auto& q : h.mul(sa.key, b)) l.add(q.key, ab.coef * sa.coef * q.coef);
        }
        for (const auto& u : h.unit) r.add(u.key, u.coef * h.counit[t[0]]);
        auto cx = compare(l, r);
        if (cx) {
            cx->lhs = "m(S*id)D = " + cx->lhs;
            return cx;
        }
        for (const auto& ab : h.delta(t[0])) {
            std::size_t a = ab.key / d, b = ab.key % d;
            for (const auto& sb : h.antipode.column(b))
                for (const auto& q : h.mul(a, sb.key)) l.add(q.key, ab.coef * sb.coef * q.coef);
        }
        for (const auto& u : h.unit) r.add(u.key, u.coef * h.counit[t[0]]);
        cx = compare(l, r);
        if (cx) cx->lhs = "m(id*S)D = " + cx->lhs;
        return cx;
    }));
    return rep;
}

CheckResult verify_antipode_involutive(const HopfAlgebraData& h) {
    CheckResult r;
    r.name = "S^2=id";
    r.cases = h.dim;
    for (std::size_t i = 0; i < h.dim; ++i) {
        SparseVec s2 = apply(h.antipode, h.antipode.column(i));
        if (!(s2 == SparseVec::unit(i))) {
            r.passed = false;
            r.counterexample = Counterexample{{i}, truncated(s2), truncated(SparseVec::unit(i))};
            break;
        }
    }
    return r;
}

Report verify_star(const HopfAlgebraData& h) {
    if (!h.star) throw MissingStar("algebra has no star structure: " + h.name);
    const LinearMap& st = *h.star;
    const std::size_t d = h.dim;
    Report rep;
    rep.title = "star: " + h.name;
    CheckOptions opt;
    rep.add(run_check("star involution", TuplePlan(d, 1, false, opt, ""), 1, 1, [&](const auto& t) {
        SparseVec l = apply(st, st.column(t[0]));
        SparseVec r = SparseVec::unit(t[0]);
        if (l == r) return std::optional<Counterexample>{};
        return std::optional<Counterexample>{Counterexample{{}, truncated(l), truncated(r)}};
    }));
    rep.add(run_check("star anti-multiplicative", TuplePlan(d, 2, false, opt, ""), 2, 1, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& p : h.mul(t[0], t[1]))
            for (const auto& q : st.column(p.key)) l.add(q.key, p.coef * q.coef);
        for (const auto& b : st.column(t[1]))
            for (const auto& a : st.column(t[0]))
                for (const auto& q : h.mul(b.key, a.key)) r.add(q.key, a.coef * b.coef * q.coef);
        return compare(l, r);
    }));
    rep.add(run_check("star coproduct compatible", TuplePlan(d, 1, false, opt, ""), 1, 1, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& s : st.column(t[0]))
            for (const auto& q : h.delta(s.key)) l.add(q.key, s.coef * q.coef);
        for (const auto& ab : h.delta(t[0]))
            for (const auto& x : st.column(ab.key / d))
                for (const auto& y : st.column(ab.key % d)) r.add(x.key * d + y.key, ab.coef * x.coef * y.coef);
        return compare(l, r);
    }));
    return rep;
}

namespace {

BasisLabel dual_label(const BasisLabel& l, std::size_t i) {
    switch (l.kind) {
        case LabelKind::BicrossH: return {LabelKind::BicrossDual, l.a, l.b};
        case LabelKind::BicrossDual: return {LabelKind::BicrossH, l.a, l.b};
        case LabelKind::GroupElement: return {LabelKind::FunctionDelta, l.a, 0};
        case LabelKind::FunctionDelta: return {LabelKind::GroupElement, l.a, 0};
        default: return {LabelKind::Opaque, static_cast<int>(i), 0};
    }
}

}  // namespace

HopfAlgebraData dual_hopf(const HopfAlgebraData& h) {
    const std::size_t d = h.dim;
    HopfAlgebraData out;
    out.name = "dual(" + h.name + ")";
    out.dim = d;
    for (std::size_t i = 0; i < d; ++i) out.labels.push_back(dual_label(h.labels[i], i));
    // f^a f^b = Σ_k Δ_k^{ab} f^k
    std::vector<Accumulator> prod(d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (const auto& t : h.delta(k)) prod[t.key].add(k, t.coef);
    out.product.reserve(d * d, h.coproduct.nnz());
    for (auto& acc : prod) out.product.push_row(acc.take());
    // Δf^k = Σ_{ij} m_{ij}^k f^i⊗f^j
    std::vector<Accumulator> cop(d);
    for (std::size_t ij = 0; ij < d * d; ++ij)
        for (const auto& t : h.product.row(ij)) cop[t.key].add(ij, t.coef);
    for (auto& acc : cop) out.coproduct.push_row(acc.take());
    std::vector<Term> unit;
    for (std::size_t k = 0; k < d; ++k)
        if (!h.counit[k].is_zero()) unit.push_back({k, h.counit[k]});
    out.unit = SparseVec(std::move(unit));
    out.counit.assign(d, 0);
    for (const auto& t : h.unit) out.counit[t.key] = t.coef;
    out.antipode = transpose(h.antipode);
    // φ*(x) = φ((S x)*) on rationals, i.e. the transpose of * ∘ S.
    if (h.star) out.star = transpose(compose(*h.star, h.antipode));
    out.finalize();
    return out;
}

HopfAlgebraData group_hopf(const FiniteGroup& x) {
    const std::size_t n = x.order();
    HopfAlgebraData h;
    h.name = "k[" + x.name() + "]";
    h.dim = n;
    for (std::size_t i = 0; i < n; ++i) h.labels.push_back({LabelKind::GroupElement, static_cast<int>(i), 0});
    h.product.reserve(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h.product.push_row(SparseVec::unit(x.mul(i, j)));
    h.unit = SparseVec::unit(0);
    for (std::size_t i = 0; i < n; ++i) h.coproduct.push_row(SparseVec::unit(i * n + i));
    h.counit.assign(n, 1);
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = x.inv(i);
    h.antipode = LinearMap::from_permutation(inv);
    h.star = h.antipode;
    h.finalize();
    return h;
}

HopfAlgebraData function_hopf(const FiniteGroup& x) {
    const std::size_t n = x.order();
    HopfAlgebraData h;
    h.name = "k(" + x.name() + ")";
    h.dim = n;
    for (std::size_t i = 0; i < n; ++i) h.labels.push_back({LabelKind::FunctionDelta, static_cast<int>(i), 0});
    h.product.reserve(n * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h.product.push_row(i == j ? SparseVec::unit(i) : SparseVec{});
    std::vector<Term> unit;
    for (std::size_t i = 0; i < n; ++i) unit.push_back({i, 1});
    h.unit = SparseVec(std::move(unit));
    std::vector<Accumulator> cop(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) cop[x.mul(a, b)].add(a * n + b, 1);
    for (auto& acc : cop) h.coproduct.push_row(acc.take());
    h.counit.assign(n, 0);
    h.counit[0] = 1;
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = x.inv(i);
    h.antipode = LinearMap::from_permutation(inv);
    h.star = LinearMap::identity(n);
    h.finalize();
    return h;
}

Report verify_hopf_morphism(const HopfAlgebraData& a, const HopfAlgebraData& b, const LinearMap& f, bool anti,
                            const CheckOptions& opt) {
    if (f.cols() != a.dim || f.rows() != b.dim) throw ShapeError("morphism shape does not match algebras");
    Report rep;
    rep.title = std::string(anti ? "anti-" : "") + "hopf morphism " + a.name + " -> " + b.name;
    const std::size_t db = b.dim;
    const bool monomial = [&] {
        for (std::size_t j = 0; j < f.cols(); ++j)
            if (f.column(j).size() > 1) return false;
        return true;
    }();
    // Basis maps make the pair sweep a handful of lookups per pair, so it stays exhaustive.
    rep.add(run_check(anti ? "anti-multiplicative" : "multiplicative",
                      TuplePlan(a.dim, 2, !monomial, opt, "multiplicative"), 2, opt.workers, [&](const auto& t) {
                          thread_local Accumulator l, r;
                          for (const auto& p : a.mul(t[0], t[1]))
                              for (const auto& q : f.column(p.key)) l.add(q.key, p.coef * q.coef);
                          std::size_t x = anti ? t[1] : t[0], y = anti ? t[0] : t[1];
                          for (const auto& fx : f.column(x))
                              for (const auto& fy : f.column(y))
                                  for (const auto& q : b.mul(fx.key, fy.key))
                                      r.add(q.key, fx.coef * fy.coef * q.coef);
                          return compare(l, r);
                      }));
    rep.add(run_check("comultiplicative", TuplePlan(a.dim, 1, false, opt, ""), 1, opt.workers, [&](const auto& t) {
        thread_local Accumulator l, r;
        for (const auto& fx : f.column(t[0]))
            for (const auto& q : b.delta(fx.key)) l.add(q.key, fx.coef * q.coef);
        for (const auto& xy : a.delta(t[0]))
            for (const auto& p : f.column(xy.key / a.dim))
                for (const auto& q : f.column(xy.key % a.dim))
                    r.add(p.key * db + q.key, xy.coef * p.coef * q.coef);
        return compare(l, r);
    }));
    {
        SparseVec fu = apply(f, a.unit);
        if (fu == b.unit) rep.add("unit", true);
        else rep.fail("unit", {{}, truncated(fu), truncated(b.unit)});
    }
    rep.add(run_check("counit", TuplePlan(a.dim, 1, false, opt, ""), 1, opt.workers,
                      [&](const auto& t) -> std::optional<Counterexample> {
                          Rational l = b.counit_of(f.column(t[0]));
                          if (l == a.counit[t[0]]) return std::nullopt;
                          return Counterexample{{}, l.str(), a.counit[t[0]].str()};
                      }));
    rep.add(run_check("antipode", TuplePlan(a.dim, 1, false, opt, ""), 1, opt.workers,
                      [&](const auto& t) -> std::optional<Counterexample> {
                          SparseVec l = apply(b.antipode, f.column(t[0]));
                          SparseVec r = apply(f, a.antipode.column(t[0]));
                          if (l == r) return std::nullopt;
                          return Counterexample{{}, truncated(l), truncated(r)};
                      }));
    return rep;
}

// ---- tensor elements ----

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (b && r > UINT64_MAX / b) throw ShapeError("tensor power too large for 64-bit keys");
        r *= b;
    }
    return r;
}

std::vector<std::size_t> split_key(Key k, std::size_t dim, std::size_t rank) {
    std::vector<std::size_t> idx(rank);
    for (std::size_t s = rank; s-- > 0;) {
        idx[s] = k % dim;
        k /= dim;
    }
    return idx;
}

Key join_key(const std::vector<std::size_t>& idx, std::size_t dim) {
    Key k = 0;
    for (auto i : idx) k = k * dim + i;
    return k;
}

namespace {

constexpr std::size_t kMaxRank = 8;
using Idx = std::array<std::size_t, kMaxRank>;

inline void split_into(Key k, std::size_t dim, std::size_t rank, Idx& out) {
    for (std::size_t s = rank; s-- > 0;) {
        out[s] = k % dim;
        k /= dim;
    }
}

inline Key join_from(const Idx& idx, std::size_t rank, std::size_t dim) {
    Key k = 0;
    for (std::size_t s = 0; s < rank; ++s) k = k * dim + idx[s];
    return k;
}

void check_rank(std::size_t r) {
    if (r == 0 || r > kMaxRank) throw ShapeError("unsupported tensor rank");
}

}  // namespace

TensorElement tensor_one(const HopfAlgebraData& a, std::size_t rank) {
    check_rank(rank);
    TensorElement x{1, a.unit};
    for (std::size_t r = 1; r < rank; ++r) x = tensor_product(x, TensorElement{1, a.unit}, a.dim);
    return x;
}

TensorElement tensor_product(const TensorElement& x, const TensorElement& y, std::size_t dim) {
    check_rank(x.rank + y.rank);
    const std::uint64_t stride = ipow(dim, y.rank);
    std::vector<Term> terms;
    terms.reserve(x.v.size() * y.v.size());
    for (const auto& a : x.v)
        for (const auto& b : y.v) terms.push_back({a.key * stride + b.key, a.coef * b.coef});
    return {x.rank + y.rank, SparseVec(std::move(terms))};
}

TensorElement multiply(const HopfAlgebraData& a, const TensorElement& x, const TensorElement& y) {
    if (x.rank != y.rank) throw ShapeError("tensor ranks differ");
    const std::size_t r = x.rank, d = a.dim;
    check_rank(r);
    const std::uint64_t stride = ipow(d, r - 1);
    // y's terms are sorted, so each first-slot value owns a contiguous range.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> range(d, {0, 0});
    const auto& yt = y.v.terms();
    for (std::size_t i = 0; i < yt.size();) {
        std::size_t q = yt[i].key / stride, j = i;
        while (j < yt.size() && yt[j].key / stride == q) ++j;
        range[q] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
        i = j;
    }
    Accumulator acc;
    Idx ix{}, iy{};
    std::vector<Term> partial, next;
    for (const auto& tx : x.v) {
        split_into(tx.key, d, r, ix);
        for (std::uint32_t q : a.right_support[ix[0]]) {
            auto [b, e] = range[q];
            for (std::uint32_t k = b; k < e; ++k) {
                const Term& ty = yt[k];
                split_into(ty.key, d, r, iy);
                partial.clear();
                for (const auto& t : a.mul(ix[0], iy[0])) partial.push_back({t.key, t.coef * tx.coef * ty.coef});
                for (std::size_t s = 1; s < r && !partial.empty(); ++s) {
                    auto row = a.mul(ix[s], iy[s]);
                    next.clear();
                    for (const auto& p : partial)
                        for (const auto& t : row) next.push_back({p.key * d + t.key, p.coef * t.coef});
                    partial.swap(next);
                }
                for (const auto& p : partial) acc.add(p.key, p.coef);
            }
        }
    }
    return {r, acc.take()};
}

TensorElement apply_delta(const HopfAlgebraData& a, const TensorElement& x, std::size_t slot) {
    const std::size_t r = x.rank, d = a.dim;
    check_rank(r + 1);
    if (slot >= r) throw ShapeError("slot out of range");
    Accumulator acc;
    Idx ix{}, out{};
    for (const auto& t : x.v) {
        split_into(t.key, d, r, ix);
        for (const auto& c : a.delta(ix[slot])) {
            std::size_t o = 0;
            for (std::size_t s = 0; s < r; ++s) {
                if (s == slot) {
                    out[o++] = c.key / d;
                    out[o++] = c.key % d;
                } else {
                    out[o++] = ix[s];
                }
            }
            acc.add(join_from(out, r + 1, d), t.coef * c.coef);
        }
    }
    return {r + 1, acc.take()};
}

TensorElement apply_on_slot(const LinearMap& f, const TensorElement& x, std::size_t slot, std::size_t dim) {
    if (f.rows() != dim || f.cols() != dim) throw ShapeError("slot map must be square of the base dimension");
    const std::size_t r = x.rank;
    Accumulator acc;
    Idx ix{};
    for (const auto& t : x.v) {
        split_into(t.key, dim, r, ix);
        for (const auto& c : f.column(ix[slot])) {
            Idx o = ix;
            o[slot] = c.key;
            acc.add(join_from(o, r, dim), t.coef * c.coef);
        }
    }
    return {r, acc.take()};
}

TensorElement apply_each(const LinearMap& f, const TensorElement& x, std::size_t dim_in, std::size_t dim_out) {
    if (f.cols() != dim_in || f.rows() != dim_out) throw ShapeError("map shape mismatch");
    const std::size_t r = x.rank;
    Accumulator acc;
    Idx ix{};
    std::vector<Term> partial, next;
    for (const auto& t : x.v) {
        split_into(t.key, dim_in, r, ix);
        partial.assign(1, {0, t.coef});
        for (std::size_t s = 0; s < r; ++s) {
            next.clear();
            for (const auto& p : partial)
                for (const auto& c : f.column(ix[s])) next.push_back({p.key * dim_out + c.key, p.coef * c.coef});
            partial.swap(next);
        }
        for (const auto& p : partial) acc.add(p.key, p.coef);
    }
    return {r, acc.take()};
}

TensorElement permute_slots(const TensorElement& x, const std::vector<std::size_t>& perm, std::size_t dim) {
    const std::size_t r = x.rank;
    if (perm.size() != r) throw ShapeError("slot permutation has wrong length");
    Accumulator acc;
    Idx ix{}, o{};
    for (const auto& t : x.v) {
        split_into(t.key, dim, r, ix);
        for (std::size_t k = 0; k < r; ++k) o[k] = ix[perm[k]];
        acc.add(join_from(o, r, dim), t.coef);
    }
    return {r, acc.take()};
}

TensorElement insert_unit(const HopfAlgebraData& a, const TensorElement& x, std::size_t pos) {
    const std::size_t r = x.rank, d = a.dim;
    check_rank(r + 1);
    Accumulator acc;
    Idx ix{}, o{};
    for (const auto& t : x.v) {
        split_into(t.key, d, r, ix);
        for (const auto& u : a.unit) {
            std::size_t k = 0;
            for (std::size_t s = 0; s <= r; ++s) o[s] = (s == pos) ? u.key : ix[k++];
            acc.add(join_from(o, r + 1, d), t.coef * u.coef);
        }
    }
    return {r + 1, acc.take()};
}


}  // namespace bicross
