#pragma once

#include <utility>

#include "bicross/hopf.hpp"
#include "bicross/matched_pair.hpp"
#include "bicross/report.hpp"
#include "bicross/representations.hpp"

namespace bicross {

// F = Σ_{x,t,v} δ_x⊗t⁻¹ ⊗ δ_{tv}⊗e in D(X)⊗D(X), and its inverse Σ δ_x⊗t ⊗ δ_{tv}⊗e.
TensorElement cocycle_F(const MatchedPair& mp);
TensorElement cocycle_F_inverse(const MatchedPair& mp);

// (1⊗F)(id⊗Δ)F = (F⊗1)(Δ⊗id)F; with a candidate inverse, also F·F⁻¹ = F⁻¹·F = 1⊗1.
Report verify_2cocycle(const HopfAlgebraData& dx, const TensorElement& f, const TensorElement* f_inverse = nullptr);

// ψ(δ_s⊗u⊗t⊗δ_v) = δ_{u⁻¹s⁻¹(t▷v)u} ⊗ u⁻¹(t◁v) from D(H) (build_double_bicross) to D(X),
// and its inverse δ_{su}⊗tv ↦ δ_{s⁻¹◁(t▷v)} ⊗ (t▷v)⁻¹ ⊗ t◁(vα⁻¹v) ⊗ δ_{α⁻¹v},
// α = t⁻¹▷(u⁻¹(s⁻¹t▷v)).
std::pair<LinearMap, LinearMap> psi_iso(const MatchedPair& mp);
// The same inverse with s⁻¹◁(t▷v) and α⁻¹v replaced by their inverses.
LinearMap psi_inverse_displayed(const MatchedPair& mp);

// Both inverses against ψ, and ψ(xy) = ψ(x)ψ(y), ψ(1) = 1.
Report verify_psi_iso(const MatchedPair& mp, const CheckOptions& opt = {});

// χ((a⊗h)▷w) = ψ(a⊗h)▷χ(w) on every basis pair.
CheckResult verify_psi_chi(const MatchedPair& mp, const BicrossedBimodule& w);
// ψ-pullback of the left-regular D(X) action equals χ of the left-regular D(H) module.
CheckResult verify_psi_chi_regular(const MatchedPair& mp);

// F(Δh)F⁻¹ = (ψ⊗ψ)Δ(ψ⁻¹h) for every basis h of D(X); then D(X) with Δ̃ and
// S̃ = U S U⁻¹, U = Σ f₁Sf₂, is checked as a Hopf algebra and ψ as a Hopf isomorphism onto it.
Report twisted_coproduct_check(const MatchedPair& mp, const CheckOptions& opt = {});

// (τF)(τR⁻¹)F⁻¹ = (ψ⊗ψ)R_{D(H)}, the explicit form Σ δ_{sv}⊗(s▷u) ⊗ δ_{tu⁻¹}⊗s⁻¹,
// and (τ(ψ⊗ψ)R_{D(H)})(τF)RF⁻¹ = 1⊗1.
Report quasitriangular_transport_check(const MatchedPair& mp);

// No invertible γ with γ⊗γ = F·Δγ. The bilinear system is built from the actual products,
// every support pattern compatible with it is enumerated, and each is shown to force γ
// into span{δ_u⊗x₀ : u∈G} and to be singular. Throws ObstructionVacuous if G or M is trivial.
Report coboundary_obstruction_check(const MatchedPair& mp);

}  // namespace bicross
