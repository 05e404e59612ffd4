#ifndef TORSIONFLOW_FORMS_HPP
#define TORSIONFLOW_FORMS_HPP

#include "torsionflow/jet.hpp"
#include "torsionflow/structure.hpp"

namespace torsionflow {

/// One-form in the coordinate coframe: cx·dx + cy·dy + ct·dt, with exact
/// jet coefficients.
struct Form1 {
  WeightedJet cx, cy, ct;
};

/// Two-form in the coordinate basis: cxy·dx∧dy + cxt·dx∧dt + cyt·dy∧dt.
struct Form2 {
  WeightedJet cxy, cxt, cyt;
  bool isZero() const { return cxy.isZero() && cxt.isZero() && cyt.isZero(); }
};

Form1 operator+(const Form1& a, const Form1& b);
Form1 operator-(const Form1& a, const Form1& b);
Form2 operator+(const Form2& a, const Form2& b);
Form2 operator-(const Form2& a, const Form2& b);

Form1 scale(const WeightedJet& c, const Form1& a);
Form2 scale(const WeightedJet& c, const Form2& a);
Form1 timesI(const Form1& a);
Form2 timesI(const Form2& a);
Form1 conjForm(const Form1& a);

/// d(a₀dx + a₁dy + a₂dt) = (∂ₓa₁−∂ᵧa₀)dx∧dy + (∂ₓa₂−∂ₜa₀)dx∧dt
///                        + (∂ᵧa₂−∂ₜa₁)dy∧dt.
Form2 exteriorD(const Form1& a);

Form2 wedge(const Form1& a, const Form1& b);

/// Coframe one-forms of a structure, read off its stored components.
Form1 thetaForm(const Structure& S);
Form1 theta1Form(const Structure& S);
/// ω₁¹ = pθ¹ + qθ¹̄ + rθ as a coordinate one-form.
Form1 connectionForm(const Structure& S);

/// dθ − iθ¹∧θ¹̄; identically zero for every adapted structure.
Form2 contactStructureResidual(const Structure& S);

/// dθ¹ − θ¹∧ω₁¹ − θ∧τ¹ with τ¹ = conj(A₁₁)θ¹̄; this pins down the
/// connection coefficients and the torsion simultaneously.
Form2 coframeStructureResidual(const Structure& S);

/// dω₁¹ − (Wθ¹∧θ¹̄ + A₁₁,¹θ¹∧θ − conj(A₁₁,¹)θ¹̄∧θ); the curvature
/// equation pins down the scalar curvature component.
Form2 curvatureStructureResidual(const Structure& S);

/// All three residuals certified exactly zero.
bool structureEquationsHold(const Structure& S);

}  // namespace torsionflow

#endif
