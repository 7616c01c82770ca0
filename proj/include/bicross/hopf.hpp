#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bicross/group.hpp"
#include "bicross/linalg.hpp"
#include "bicross/report.hpp"

namespace bicross {

enum class LabelKind { BicrossH, BicrossDual, DoublePair, GroupDouble, GroupElement, FunctionDelta, Opaque };

// BicrossH(s,u) = s⊗δ_u, BicrossDual(s,u) = δ_s⊗u, DoublePair(a,h) = a⊗h with a, h
// basis indices of the two factors, GroupDouble(x,y) = δ_x⊗y.
struct BasisLabel {
    LabelKind kind = LabelKind::Opaque;
    int a = 0;
    int b = 0;
    std::string str() const;
    friend bool operator==(const BasisLabel& l, const BasisLabel& r) {
        return l.kind == r.kind && l.a == r.a && l.b == r.b;
    }
};

// Row-compressed sparse tensor: row r holds the expansion of one input tuple.
class SparseTensor {
public:
    SparseTensor() { offsets_.push_back(0); }
    std::size_t rows() const { return offsets_.size() - 1; }
    std::span<const Term> row(std::size_t r) const {
        return {terms_.data() + offsets_[r], terms_.data() + offsets_[r + 1]};
    }
    bool row_empty(std::size_t r) const { return offsets_[r] == offsets_[r + 1]; }
    void push_row(const SparseVec& v) {
        terms_.insert(terms_.end(), v.begin(), v.end());
        offsets_.push_back(terms_.size());
    }
    void push_row(std::span<const Term> v) {
        terms_.insert(terms_.end(), v.begin(), v.end());
        offsets_.push_back(terms_.size());
    }
    void reserve(std::size_t rows, std::size_t terms) {
        offsets_.reserve(rows + 1);
        terms_.reserve(terms);
    }
    std::size_t nnz() const { return terms_.size(); }
    SparseVec row_vec(std::size_t r) const {
        auto s = row(r);
        return SparseVec(std::vector<Term>(s.begin(), s.end()));
    }
    friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
        return a.offsets_ == b.offsets_ && a.terms_ == b.terms_;
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<Term> terms_;
};

// Finite-dimensional Hopf algebra by structure constants. Product row i*dim+j
// holds e_i e_j; coproduct row i holds Δe_i with keys j*dim+k.
struct HopfAlgebraData {
    std::string name;
    std::size_t dim = 0;
    std::vector<BasisLabel> labels;
    // Dimensions of tensor factors when the basis is a product basis (D(H): {dim H*, dim H}).
    std::vector<std::size_t> factors;
    SparseTensor product;
    SparseVec unit;
    SparseTensor coproduct;
    std::vector<Rational> counit;
    LinearMap antipode;
    std::optional<LinearMap> star;

    // For each left basis element, the right basis elements with nonzero product.
    std::vector<std::vector<std::uint32_t>> right_support;
    // Row i occupies words [i*row_words, (i+1)*row_words); bit j set when e_i e_j != 0.
    std::vector<std::uint64_t> nonzero_bits;
    std::size_t row_words = 0;
    void finalize();
    bool nonzero(std::size_t i, std::size_t j) const {
        return (nonzero_bits[i * row_words + (j >> 6)] >> (j & 63)) & 1u;
    }
    const std::uint64_t* nonzero_row(std::size_t i) const { return nonzero_bits.data() + i * row_words; }

    std::span<const Term> mul(std::size_t i, std::size_t j) const { return product.row(i * dim + j); }
    std::span<const Term> delta(std::size_t i) const { return coproduct.row(i); }
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;
    SparseVec comultiply(const SparseVec& x) const;
    Rational counit_of(const SparseVec& x) const;
};

// Entrywise equality of all structure maps. Empty string when equal.
std::string structure_diff(const HopfAlgebraData& a, const HopfAlgebraData& b);

Report verify_hopf_axioms(const HopfAlgebraData& h, const CheckOptions& opt = {});
CheckResult verify_antipode_involutive(const HopfAlgebraData& h);
Report verify_star(const HopfAlgebraData& h);

HopfAlgebraData dual_hopf(const HopfAlgebraData& h);
HopfAlgebraData group_hopf(const FiniteGroup& x);
HopfAlgebraData function_hopf(const FiniteGroup& x);

// f: A -> B. With anti=true the multiplicative check is f(xy) = f(y)f(x).
Report verify_hopf_morphism(const HopfAlgebraData& a, const HopfAlgebraData& b, const LinearMap& f,
                            bool anti = false, const CheckOptions& opt = {});

// ---- elements of tensor powers A^{⊗rank}, keys leftmost-major in base dim ----

struct TensorElement {
    std::size_t rank = 1;
    SparseVec v;
    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return a.rank == b.rank && a.v == b.v;
    }
};

std::uint64_t ipow(std::uint64_t b, std::size_t e);
std::vector<std::size_t> split_key(Key k, std::size_t dim, std::size_t rank);
Key join_key(const std::vector<std::size_t>& idx, std::size_t dim);

TensorElement tensor_one(const HopfAlgebraData& a, std::size_t rank);
TensorElement tensor_product(const TensorElement& x, const TensorElement& y, std::size_t dim);
TensorElement multiply(const HopfAlgebraData& a, const TensorElement& x, const TensorElement& y);
// Applies Δ to one tensor slot, raising the rank by one.
TensorElement apply_delta(const HopfAlgebraData& a, const TensorElement& x, std::size_t slot);
// Applies a linear map (square, dim×dim) to one slot.
TensorElement apply_on_slot(const LinearMap& f, const TensorElement& x, std::size_t slot, std::size_t dim);
// Applies f to every slot, mapping A^{⊗r} to B^{⊗r}.
TensorElement apply_each(const LinearMap& f, const TensorElement& x, std::size_t dim_in, std::size_t dim_out);
// Reorders slots: output slot k takes input slot perm[k].
TensorElement permute_slots(const TensorElement& x, const std::vector<std::size_t>& perm, std::size_t dim);
// Inserts the unit into a new slot at position pos.
TensorElement insert_unit(const HopfAlgebraData& a, const TensorElement& x, std::size_t pos);

std::string truncated(const SparseVec& v, std::size_t max_terms = 12);

}  // namespace bicross
