#pragma once

#include <vector>

#include "bicross/hopf.hpp"
#include "bicross/matched_pair.hpp"
#include "bicross/report.hpp"

namespace bicross {

// Every basis vector is homogeneous: grade_G[i] = |e_i| (G-local), grade_M[i] = ⟨e_i⟩ (M-local).
// act_M[t] is the left action t▷, act_G[u] the right action ◁u, so act_G[uv] = act_G[v]∘act_G[u].
struct BicrossedBimodule {
    std::size_t dim = 0;
    std::vector<int> grade_G;
    std::vector<int> grade_M;
    std::vector<LinearMap> act_M;
    std::vector<LinearMap> act_G;
    friend bool operator==(const BicrossedBimodule&, const BicrossedBimodule&) = default;
};

// X-graded left X-module; grade_X[i] = ‖e_i‖.
struct DXModule {
    std::size_t dim = 0;
    std::vector<int> grade_X;
    std::vector<LinearMap> act_X;
    friend bool operator==(const DXModule&, const DXModule&) = default;
};

BicrossedBimodule trivial_bimodule(const MatchedPair& mp);

// Conditions (i)-(iv) on every (group element, basis index); with_bimodule_law adds
// h▷(w◁a) = Σ((h₁◁a₁)▷w)◁(h₂▷a₂) over all basis pairs of H and H*.
Report verify_bicrossed_bimodule(const MatchedPair& mp, const BicrossedBimodule& w, bool with_bimodule_law = true);

// H acting on the left and H* on the right, both indexed like build_H / build_Hdual.
std::vector<LinearMap> h_action(const MatchedPair& mp, const BicrossedBimodule& w);
std::vector<LinearMap> hdual_action(const MatchedPair& mp, const BicrossedBimodule& w);
// (a⊗h)▷w = (h▷w)◁a for every D(H) basis element a*dim(H) + h.
std::vector<LinearMap> induced_action(const MatchedPair& mp, const BicrossedBimodule& w);

// Module law ρ(xy) = ρ(x)ρ(y) and ρ(1) = id for an algebra acting through basis maps.
Report verify_algebra_action(const HopfAlgebraData& a, const std::vector<LinearMap>& action,
                             const CheckOptions& opt = {});
std::vector<LinearMap> left_regular_action(const HopfAlgebraData& a);

// Reads gradings off the projectors 1⊗(e⊗δ_v) and (δ_s⊗e)⊗1 and the actions off
// 1⊗(t⊗1) and (Σ_s δ_s⊗u)⊗1. A basis that is not homogeneous is replaced by one
// made of projector images. Throws NotDecomposable when the projectors do not split the space.
BicrossedBimodule module_from_double_action(const MatchedPair& mp, const std::vector<LinearMap>& action);

// H as a bimodule: |t⊗δ_v| = (t▷v)v⁻¹, ⟨t⊗δ_v⟩ = t.
BicrossedBimodule schrodinger_module(const MatchedPair& mp);
// D(H) acting on H through h▷g = Σ h₁ g Sh₂ and g◁a = Σ ⟨a,g₁⟩g₂, from structure constants.
std::vector<LinearMap> schrodinger_action_direct(const HopfAlgebraData& H);
// Closed forms of the same action on H.
std::vector<LinearMap> schrodinger_action_closed(const MatchedPair& mp);
Report verify_schrodinger(const MatchedPair& mp, const CheckOptions& opt = {});

// Ψ(v⊗w) = ⟨v⟩▷w ⊗ v◁|w|, mapping V⊗W to W⊗V.
LinearMap braiding(const MatchedPair& mp, const BicrossedBimodule& v, const BicrossedBimodule& w,
                   bool require_verified = true);
// Σ_a e_a▷w ⊗ v◁f^a over dual bases of H and H*.
LinearMap braiding_dual_basis(const MatchedPair& mp, const BicrossedBimodule& v, const BicrossedBimodule& w);
// Ψ(h⊗g) = Σ h₁ g Sh₂ ⊗ h₃ on H⊗H.
LinearMap canonical_braiding(const HopfAlgebraData& H);
// Ψ(s⊗δ_u⊗t⊗δ_v) = sts'⁻¹⊗δ_{s'▷v} ⊗ s'⊗δ_{v(t▷v)⁻¹u}, s' = s◁(t▷v)v⁻¹.
LinearMap schrodinger_braiding_closed(const MatchedPair& mp);

// Keeps the M-labels of the input and takes the G-labels of Ψ's output, so that
// each (s,t) block of H⊗H is mapped into itself. Throws NotPermutation if Ψ is not
// a basis permutation or the result is not one.
LinearMap block_shift(const MatchedPair& mp, const LinearMap& psi);
// Order of the block map (u,v) ↦ … for fixed M-labels (s,t).
std::size_t block_order(const MatchedPair& mp, const LinearMap& shift, int s, int t);

// (ψ⊗id)(id⊗ψ)(ψ⊗id) = (id⊗ψ)(ψ⊗id)(id⊗ψ) on every basis vector of V⊗³, plus invertibility.
Report ybe_check(const LinearMap& psi, unsigned workers = 1);

DXModule chi_to_DX(const MatchedPair& mp, const BicrossedBimodule& w, bool require_verified = true);
BicrossedBimodule chi_from_DX(const MatchedPair& mp, const DXModule& v, bool require_verified = true);
Report verify_dx_module(const FiniteGroup& x, const DXModule& v);
// (δ_x⊗y)▷v = δ_{x,‖y▷v‖} y▷v at D(X) index x*|X| + y.
std::vector<LinearMap> dx_induced_action(const FiniteGroup& x, const DXModule& v);

// Tensor products: t▷(w⊗w') = t▷w ⊗ (t◁|w|)▷w', (w⊗w')◁u = w◁(⟨w'⟩▷u) ⊗ w'◁u,
// gradings multiply. For D(X), X acts diagonally.
BicrossedBimodule tensor_bimodule(const MatchedPair& mp, const BicrossedBimodule& w, const BicrossedBimodule& w2);
DXModule tensor_dx(const FiniteGroup& x, const DXModule& v, const DXModule& v2);

// χW⊗χW' → χ(W⊗W'), e_i⊗e_j ↦ (⟨e_j⟩◁|e_i|⁻¹)▷e_i ⊗ e_j.
LinearMap c_map(const MatchedPair& mp, const BicrossedBimodule& w, const BicrossedBimodule& w2,
                bool require_verified = true);
// Grading and X-equivariance of c, and invertibility.
Report verify_c_map(const MatchedPair& mp, const BicrossedBimodule& w, const BicrossedBimodule& w2);

// v⊗w ↦ ‖v‖▷w ⊗ v from R, or with reverse=true v⊗w ↦ w ⊗ ‖w‖⁻¹▷v from τR⁻¹.
LinearMap dx_braiding(const FiniteGroup& x, const DXModule& v, const DXModule& w, bool reverse = false);
// c_{W,V} ∘ Ψ' = χ(Ψ_{V,W}) ∘ c_{V,W}, where Ψ' is the reverse D(X) braiding of χV, χW.
CheckResult verify_braiding_naturality(const MatchedPair& mp, const BicrossedBimodule& v, const BicrossedBimodule& w);
// c_{U⊗V,W} ∘ (c_{U,V}⊗id) = c_{U,V⊗W} ∘ (id⊗c_{V,W}).
CheckResult verify_c_coherence(const MatchedPair& mp, const BicrossedBimodule& u, const BicrossedBimodule& v,
                               const BicrossedBimodule& w);

}  // namespace bicross
