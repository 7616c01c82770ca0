#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bicross/group.hpp"
#include "bicross/report.hpp"

namespace bicross {

// Exact factorization X = GM with the actions read off s·u = (s▷u)(s◁u).
// G-local and M-local indices are positions in the sorted subgroup element lists.
struct MatchedPair {
    FiniteGroup X;
    Subgroup G, M;
    std::vector<std::vector<int>> act_left;   // [s][u] -> G-local  (s▷u)
    std::vector<std::vector<int>> act_right;  // [s][u] -> M-local  (s◁u)

    int nG() const { return G.order(); }
    int nM() const { return M.order(); }
    int lt(int s, int u) const { return act_left[s][u]; }   // s▷u
    int rt(int s, int u) const { return act_right[s][u]; }  // s◁u

    // Local group operations, computed through X.
    int gmul(int u, int v) const { return G.local[X.mul(G[u], G[v])]; }
    int ginv(int u) const { return G.local[X.inv(G[u])]; }
    int mmul(int s, int t) const { return M.local[X.mul(M[s], M[t])]; }
    int minv(int s) const { return M.local[X.inv(M[s])]; }
    int gx(int u) const { return G[u]; }
    int mx(int s) const { return M[s]; }

    // Unique x = g·m (G-local, M-local) and x = m·g (M-local, G-local).
    std::pair<int, int> split_gm(int x) const { return gm_split[x]; }
    std::pair<int, int> split_mg(int x) const { return mg_split[x]; }

    std::vector<std::pair<int, int>> gm_split;
    std::vector<std::pair<int, int>> mg_split;
};

// Ordered pairs (G, M) with |G||M| = |X| and G ∩ M = {e}.
std::vector<std::pair<Subgroup, Subgroup>> exact_factorizations(const FiniteGroup& x, unsigned workers = 1);

MatchedPair derive_matched_pair(const FiniteGroup& x, const Subgroup& g, const Subgroup& m);

Report verify_matched_pair(const MatchedPair& mp);

// G⋈M on pairs (u,s) at index u*|M| + s, plus the map (u,s) -> u·s into X.
std::pair<FiniteGroup, GroupIsomorphism> double_cross_product(const MatchedPair& mp);

// Automorphisms θ of X with θ(G) ⊆ M and θ(M) ⊆ G.
std::vector<GroupIsomorphism> find_factor_reversing(const MatchedPair& mp, unsigned workers = 1);
// Automorphisms that either preserve both factors or swap them.
std::vector<GroupIsomorphism> find_factor_preserving_or_reversing(const MatchedPair& mp, unsigned workers = 1);
bool is_factor_reversing(const MatchedPair& mp, const GroupIsomorphism& theta);

// For a cyclic subgroup, local indices of g^0, g^1, ... for its lowest-index generator g.
// Empty when the subgroup is not cyclic.
std::vector<int> cyclic_labels(const FiniteGroup& x, const Subgroup& s);

}  // namespace bicross
