#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace bicross {

using Perm = std::vector<int>;  // image table on 0..degree-1

// Finite group as a Cayley table. Element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup() = default;
    // Validates the table; throws SpecError if it is not a group with identity 0.
    FiniteGroup(std::string name, std::vector<std::vector<int>> cayley);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    int order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return 0; }
    std::vector<std::vector<int>> cayley() const;
    int element_order(int a) const;
    int pow(int a, int k) const;

    // Permutation realization, present for groups built from generators.
    const std::vector<Perm>& perms() const { return perms_; }
    void set_perms(std::vector<Perm> p) { perms_ = std::move(p); }
    // Index of a permutation in this group, or -1.
    int find_perm(const Perm& p) const;

private:
    std::string name_;
    int n_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::vector<Perm> perms_;
};

// Composition convention: (p*q)(i) = p(q(i)).
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
// Cycle notation over 0..degree-1, e.g. {{0,1,2},{3,4}}.
Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

constexpr int kDefaultOrderCap = 1024;

FiniteGroup group_from_generators(int degree, const std::vector<Perm>& generators,
                                  int order_cap = kDefaultOrderCap, std::string name = "perm");
// cyclic:n | dihedral:n | sym:n | product:spec,spec
FiniteGroup builtin_group(const std::string& spec);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// Empty string when all four table invariants hold, else a description of the first violation.
std::string check_group_table(const FiniteGroup& g);

struct Subgroup {
    std::vector<int> elements;  // sorted parent indices; elements[0] == 0
    std::vector<int> local;     // parent index -> local index, or -1
    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int x) const { return local[x] >= 0; }
    int operator[](int i) const { return elements[i]; }
    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
};

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> elements);
Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& generators);
// Empty string when elements form a subgroup.
std::string check_subgroup(const FiniteGroup& g, const Subgroup& h);
// Sorted by order, then lexicographic element list. order_filter <= 0 means all.
std::vector<Subgroup> subgroups_of(const FiniteGroup& g, int order_filter = 0);

struct GroupIsomorphism {
    std::vector<int> map;
    int operator()(int x) const { return map[x]; }
    friend bool operator==(const GroupIsomorphism& a, const GroupIsomorphism& b) { return a.map == b.map; }
};

bool is_isomorphism(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& map);
GroupIsomorphism compose(const GroupIsomorphism& a, const GroupIsomorphism& b);  // a ∘ b
GroupIsomorphism inverse(const GroupIsomorphism& a);

// A small generating set, chosen greedily in index order.
std::vector<int> generating_set(const FiniteGroup& g);

struct IsoSearch {
    // Generators whose images are searched; defaults to generating_set(src).
    std::vector<int> generators;
    // Rejects an element image as soon as it is fixed during extension.
    std::function<bool(int src, int img)> element_filter;
    // Applied to each complete isomorphism.
    std::function<bool(const std::vector<int>&)> accept;
    unsigned workers = 1;
};

std::vector<GroupIsomorphism> find_isomorphisms(const FiniteGroup& src, const FiniteGroup& tgt,
                                                const IsoSearch& opts = {});

}  // namespace bicross
