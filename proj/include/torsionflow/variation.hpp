#ifndef TORSIONFLOW_VARIATION_HPP
#define TORSIONFLOW_VARIATION_HPP

#include <complex>
#include <stdexcept>

#include "torsionflow/flow.hpp"
#include "torsionflow/structure.hpp"

namespace torsionflow {

struct UnsupportedBackground : std::runtime_error {
  explicit UnsupportedBackground(const std::string& what) : std::runtime_error(what) {}
};
struct FamilyEvaluationFailed : std::runtime_error {
  explicit FamilyEvaluationFailed(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Deformation data. A deformation of (J, θ) is the pair (E, η): E the
// J-anticommuting endomorphism stored through its complex component E₁₁,
// η the logarithmic rate of the contact form (θ̇ = 2ηθ). Two contexts:
// exact jets over a Heisenberg-based background, and constants over a
// homogeneous structure.
// ---------------------------------------------------------------------------

struct JetDeformation {
  WeightedJet E11;
  WeightedJet eta;
};

struct HomogeneousDeformation {
  std::complex<double> E11{0.0, 0.0};
  double eta = 0.0;
};

// ---------------------------------------------------------------------------
// Evolution equations of the general flow, exact-jet context.
// ---------------------------------------------------------------------------

/// θ̇¹ = theta_coeff·θ + theta1_coeff·θ¹ + theta1bar_coeff·θ¹̄.
struct CoframeVariation {
  WeightedJet theta_coeff;      // 2iη¹
  WeightedJet theta1_coeff;     // η
  WeightedJet theta1bar_coeff;  // −i·conj(E₁₁)
};
CoframeVariation coframeVariation(const Structure& S, const JetDeformation& def);

/// Ȧ₁̄₁̄ = −2(iη₁̄₁̄ + ηA₁̄₁̄) − iE₁̄₁̄,₀.
WeightedJet torsionVariation(const Structure& S, const JetDeformation& def);

/// ω̇₁¹ = i(2Re(A₁₁Ē₁₁) + Δ_bη)θ + (3η₁ − iE₁₁,¹)θ¹ − (3η₁̄ + iE₁̄₁̄,¹̄)θ¹̄
/// together with the Ricci-component rate
/// Ṙ₁₁̄ = −(2Re(A₁₁Ē₁₁) + Δ_bη) − 2ηR₁₁̄ − (3η₁ − iE₁₁,¹),₁̄ − (3η₁̄ + iE₁̄₁̄,¹̄),₁.
struct ConnectionRicciVariation {
  WeightedJet theta_coeff;
  WeightedJet theta1_coeff;
  WeightedJet theta1bar_coeff;
  WeightedJet ricci;
};
ConnectionRicciVariation connectionRicciVariation(const Structure& S,
                                                  const JetDeformation& def);

/// Ẇ = 2Re(iE₁₁,¹¹ − A₁₁Ē₁₁) − 4Δ_bη − 2Wη.
WeightedJet websterVariation(const Structure& S, const JetDeformation& def);

/// Gauge operator of the deformation G = E ⊕ hθ on the flat background:
/// H(G) = h₁ + iE₁₁,¹. Only the flat background is supported — elsewhere
/// the operator picks up lower-order curvature terms outside this scope.
WeightedJet gaugeOperatorH(const Structure& S, const WeightedJet& E11,
                           const WeightedJet& h);

/// Highest-weight part of the linearized flow operator at the flat
/// background: E-part 4·Δ_bE₁₁ and scalar part 10·Δ_bh, with the
/// sublaplacian acting componentwise.
struct LinearizedDeformation {
  WeightedJet E_part;
  WeightedJet scalar_part;
};
LinearizedDeformation linearizationL(const Structure& S, const WeightedJet& E11,
                                     const WeightedJet& h);

// ---------------------------------------------------------------------------
// Homogeneous context: E₁₁ and η are left-invariant constants, so every
// horizontal derivative drops and only connection corrections survive.
// ---------------------------------------------------------------------------

struct HomogeneousCoframeVariation {
  std::complex<double> theta_coeff;
  std::complex<double> theta1_coeff;
  std::complex<double> theta1bar_coeff;
};
HomogeneousCoframeVariation coframeVariation(const HomogeneousDeformation& def);

/// Ȧ₁̄₁̄ = −2ηĀ₁₁ − 2irĒ₁₁ (constant deformation; E₁̄₁̄,₀ = 2rĒ₁₁).
std::complex<double> torsionVariation(const PseudohermitianGeometry& g,
                                      const HomogeneousDeformation& def);

struct HomogeneousConnectionRicci {
  std::complex<double> theta_coeff;      // 2i·Re(A₁₁Ē₁₁)
  std::complex<double> theta1_coeff;     // 2iqE₁₁
  std::complex<double> theta1bar_coeff;  // −2ipĒ₁₁
  double ricci;                          // −2Re(A₁₁Ē₁₁) − 2ηW − 4Im(q²E₁₁)
};
HomogeneousConnectionRicci connectionRicciVariation(const PseudohermitianGeometry& g,
                                                    const HomogeneousDeformation& def);

/// Ẇ = 2Re(2iq²E₁₁ − A₁₁Ē₁₁) − 2Wη.
double websterVariation(const PseudohermitianGeometry& g,
                        const HomogeneousDeformation& def);

// ---------------------------------------------------------------------------
// Finite-difference verification harness.
// ---------------------------------------------------------------------------

/// One-parameter family of homogeneous structures through `base` whose
/// tangent at u = 0 is the deformation: s(u) = s₀e^{2ηu} and
/// J(u) = retract(J₀ + 2u·E) with E the real endomorphism of E₁₁.
struct HomogeneousFamily {
  FlowState base;
  HomogeneousDeformation def;
};

FlowState familyPoint(const HomogeneousFamily& fam, double u);

enum class VariationFormula {
  TorsionBar,           // Ȧ₁̄₁̄
  ConnectionTheta,      // ω̇₁¹ evaluated on the base Reeb vector
  ConnectionTheta1,     // ω̇₁¹ evaluated on the base Z₁
  ConnectionTheta1Bar,  // ω̇₁¹ evaluated on the base Z₁̄
  Ricci,                // Ṙ₁₁̄
  Webster,              // Ẇ
};

struct VariationReport {
  std::complex<double> analytic;
  std::complex<double> finite_difference;
  double abs_error;
  double richardson_ratio;
};

/// Centered finite difference [g(u0+eps) − g(u0−eps)]/(2eps) of the exact
/// geometry along the family against the analytic rate at the family point
/// u0, with the Richardson ratio taken against the half step. The frame
/// along the family is prescribed so that its tangent realizes the coframe
/// rate θ̇¹ = ηθ¹ − iĒθ¹̄ exactly at u0. Requires eps ∈ (0, 0.1].
VariationReport fdVerify(const HomogeneousFamily& fam, VariationFormula formula,
                         double u0, double eps);

}  // namespace torsionflow

#endif
