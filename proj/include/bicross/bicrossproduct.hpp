#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bicross/hopf.hpp"
#include "bicross/matched_pair.hpp"

namespace bicross {

// Both H and H* index their basis by s*|G| + u (s M-local, u G-local).
inline std::size_t bicross_index(const MatchedPair& mp, int s, int u) {
    return static_cast<std::size_t>(s) * mp.nG() + u;
}

// H = kM▷◀k(G) on s⊗δ_u.
HopfAlgebraData build_H(const MatchedPair& mp);
// H* = k(M)▶◁kG on δ_s⊗u.
HopfAlgebraData build_Hdual(const MatchedPair& mp);

// θ̃: H -> H*, s⊗δ_u ↦ δ_{θ(s▷u)}⊗θ(s◁u).
LinearMap theta_tilde(const MatchedPair& mp, const GroupIsomorphism& theta);
// The displayed inverse H* -> H, δ_s⊗u ↦ θ^{-1}(s▷u)⊗δ_{θ^{-1}(s◁u)}.
LinearMap theta_tilde_inverse(const MatchedPair& mp, const GroupIsomorphism& theta);
// θ̃: H* -> H, δ_s⊗u ↦ θ(s▷u)⊗δ_{θ(s◁u)}.
LinearMap theta_tilde_dual(const MatchedPair& mp, const GroupIsomorphism& theta);

// ⟨s⊗δ_u, t⊗δ_v⟩ = δ_{s,θ(t▷v)} δ_{u,θ(t◁v)} as a 1×d² covector, key i*d + j.
LinearMap duality_pairing(const MatchedPair& mp, const GroupIsomorphism& theta);
// Hopf pairing axioms for a covector on H⊗H, plus nondegeneracy.
Report verify_pairing(const HopfAlgebraData& h, const LinearMap& pairing);

struct ConverseResult {
    std::optional<GroupIsomorphism> theta;
    std::string failed_step;  // empty on success
    std::optional<Counterexample> counterexample;
};

// phi[i] = H* index of the image of H basis element i.
ConverseResult basis_selfduality_converse_check(const MatchedPair& mp, const HopfAlgebraData& H,
                                                const HopfAlgebraData& Hd, const std::vector<std::size_t>& phi);

// ⟨S h, S a⟩ = ⟨h, a⟩ for the canonical pairing of H with H*.
CheckResult verify_canonical_pairing_antipode(const HopfAlgebraData& H, const HopfAlgebraData& Hd);

}  // namespace bicross
