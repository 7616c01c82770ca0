#pragma once

#include <vector>

#include "bicross/bicrossproduct.hpp"
#include "bicross/hopf.hpp"
#include "bicross/matched_pair.hpp"

namespace bicross {

// Mutual coadjoint actions between H and H*. Entry h*dim + a holds
// h▷a (in H*) and h◁a (in H) for H basis h, H* basis a.
struct CoadjointActions {
    std::size_t dim = 0;
    std::vector<SparseVec> h_on_dual;
    std::vector<SparseVec> dual_on_h;
};

// Closed forms for kM▷◀k(G):
//   (t⊗δ_v)▷(δ_s⊗u) = δ_{v,(s▷u)^{-1}u} δ_{t's t'^{-1}}⊗t'▷u
//   (t⊗δ_v)◁(δ_s⊗u) = δ_{t◁v,t(s◁u)} t'⊗δ_{(s▷u)vu^{-1}},   t' = t◁(s▷u)^{-1}
CoadjointActions coadjoint_actions(const MatchedPair& mp);
// h◁a = Σ h₂⟨a,(Sh₁)h₃⟩ and h▷a = Σ a₂⟨h,(Sa₁)a₃⟩ evaluated from structure
// constants, with ⟨f^i,e_j⟩ = δ_ij between hd and h.
CoadjointActions coadjoint_actions_direct(const HopfAlgebraData& h, const HopfAlgebraData& hd);
CheckResult compare_coadjoint(const CoadjointActions& a, const CoadjointActions& b);

// θ̃(h▷b) = θ̃b◁θ̃h and θ̃(h◁b) = θ̃b▷θ̃h on all basis pairs.
Report verify_coadjoint_equivariance(const MatchedPair& mp, const GroupIsomorphism& theta,
                                     const CoadjointActions& ca);
// Σ h₁▷a₁ ⊗ h₂◁a₂ = Σ h₂▷a₂ ⊗ h₁◁a₁ on all basis pairs.
CheckResult verify_mutual_action_identity(const HopfAlgebraData& h, const HopfAlgebraData& hd,
                                          const CoadjointActions& ca);

// D(H) on H*⊗H, index a*dim(H) + h, with the product from the pairing formula.
HopfAlgebraData build_double_general(const HopfAlgebraData& h);
// D(H) for H = kM▷◀k(G), straightened through the closed cross relation.
HopfAlgebraData build_double_bicross(const MatchedPair& mp);
// (1⊗h)(b⊗1) in D(H) from the closed cross relation, and from the coadjoint form
// Σ (h₁▷b₁)⊗(h₂◁b₂). Both return D(H) keys.
SparseVec cross_relation(const MatchedPair& mp, std::size_t h, std::size_t b);
SparseVec cross_from_coadjoint(const HopfAlgebraData& h, const HopfAlgebraData& hd, const CoadjointActions& ca,
                               std::size_t hi, std::size_t b);

struct GroupDouble {
    HopfAlgebraData algebra;
    TensorElement R;
};
// D(X) on δ_x⊗y at x*|X| + y, with R = Σ δ_y⊗e ⊗ δ_z⊗y.
GroupDouble build_group_double(const FiniteGroup& x);

// Σ_a (f^a⊗1)⊗(1⊗e_a) for a double built on H*⊗H.
TensorElement double_R(const HopfAlgebraData& d);

// (Δ⊗id)R = R₁₃R₂₃, (id⊗Δ)R = R₁₃R₁₂, τΔ(h)R = RΔ(h), and R·(S⊗id)R = 1⊗1.
Report verify_quasitriangular(const HopfAlgebraData& d, const TensorElement& R, const CheckOptions& opt = {});

// (a⊗h) ↦ θ̃(h)⊗θ̃(a) on D(H).
LinearMap psi_anti_automorphism(const MatchedPair& mp, const GroupIsomorphism& theta);

}  // namespace bicross
