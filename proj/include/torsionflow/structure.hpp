#ifndef TORSIONFLOW_STRUCTURE_HPP
#define TORSIONFLOW_STRUCTURE_HPP

#include <array>
#include <vector>

#include "torsionflow/heisenberg.hpp"
#include "torsionflow/jet.hpp"

namespace torsionflow {

/// Frame directions of an adapted frame (Z₁, Z₁̄, T).
enum class Dir { Z1, Z1bar, T };

/// Behaviour of one tensor slot under the connection: a lower unbarred
/// index, a lower barred index, or the Reeb index (which is parallel).
/// With the Levi normalization h₁₁̄ = 1, an upper barred index transforms
/// like Lower1 and an upper unbarred index like Lower1Bar, so these three
/// classes cover all raised-index derivatives as well.
enum class IndexClass { Lower1, Lower1Bar, Zero };

/// Vector field written in the fixed flat left-invariant frame with exact
/// jet coefficients: V = cZ1·Z₁ + cZ1bar·Z₁̄ + cT·T.
struct FrameVec {
  WeightedJet cZ1, cZ1bar, cT;
};

/// V applied to a scalar jet as a derivation.
WeightedJet apply(const FrameVec& v, const WeightedJet& j);

FrameVec addVec(const FrameVec& a, const FrameVec& b);
FrameVec scaleVec(const WeightedJet& c, const FrameVec& v);

/// Adapted pseudohermitian structure with exact-jet data: the adapted frame
/// (expressed in the flat frame), the connection form in its own coframe
/// ω₁¹ = pθ¹ + qθ¹̄ + rθ, the torsion component A₁₁, the scalar curvature W,
/// and the coframe components in (dx, dy, dt) for exterior-calculus checks.
struct Structure {
  FrameVec Z1, Z1bar, Reeb;
  WeightedJet p, q, r;
  WeightedJet A11;
  WeightedJet W;
  std::array<WeightedJet, 3> theta;
  std::array<WeightedJet, 3> theta1;

  const FrameVec& frame(Dir d) const;
  /// ω₁¹ evaluated on the frame vector of d.
  const WeightedJet& conn(Dir d) const;
};

/// The flat model: zero connection, torsion, and curvature.
Structure flatStructure();

/// One tensor component with tracked slot classes; each covariant
/// derivative appends one slot and adds the connection corrections of the
/// existing slots.
struct Tensor {
  WeightedJet value;
  std::vector<IndexClass> indices;
};

Tensor scalarTensor(WeightedJet v);

/// Slot class appended by differentiating in direction d.
IndexClass classOf(Dir d);

/// Covariant derivative of one component in direction d. Raised-index
/// derivatives are the barred-direction ones: X,^1 = covDeriv(·, Z1bar) and
/// X,^1̄ = covDeriv(·, Z1), by h₁₁̄ = 1.
Tensor covDeriv(const Structure& S, const Tensor& u, Dir d);

/// Scalar first derivatives φ₁, φ₁̄, φ₀.
WeightedJet d1(const Structure& S, const WeightedJet& phi);
WeightedJet d1bar(const Structure& S, const WeightedJet& phi);
WeightedJet d0(const Structure& S, const WeightedJet& phi);

/// Δ_b φ = φ₁,¹ + φ₁̄,¹̄.
WeightedJet sublaplacian(const Structure& S, const WeightedJet& phi);

/// Third-order operator P₁φ = φ₁̄¹̄₁ + iA₁₁φ¹ whose kernel (on the flat
/// model) is exactly the pluriharmonic functions.
WeightedJet paneitzP1(const Structure& S, const WeightedJet& phi);

/// Conjugate component P₁̄φ = φ₁¹₁̄ − iA₁̄₁̄φ¹̄.
WeightedJet paneitzP1bar(const Structure& S, const WeightedJet& phi);

/// Fourth-order operator P₀φ = ½[(P₁φ),¹ + (P₁̄φ),¹̄], normalized so that
/// it factors through ¼(Δ_b² + T²) modulo torsion and is conformally
/// covariant of weight e^{−4f}.
WeightedJet paneitzP0(const Structure& S, const WeightedJet& phi);

/// The factored fourth-order form
///   ¼[(Δ_b² + T²)φ + 2i((A₁₁φ¹),¹ − (A₁̄₁̄φ₁),₁)];
/// equality with paneitzP0 is a consistency check.
WeightedJet paneitzP0Factored(const Structure& S, const WeightedJet& phi);

/// L_α φ = Δ_b φ − iα Tφ.
WeightedJet follandStein(const Structure& S, const Rational& alpha,
                         const WeightedJet& phi);

/// Ricci-identity residuals; all must vanish identically:
///   φ₁₁̄ − φ₁̄₁ − iφ₀   and   φ₀₁ − φ₁₀ − A₁₁φ¹.
WeightedJet commutationMixedResidual(const Structure& S, const WeightedJet& phi);
WeightedJet commutationReebResidual(const Structure& S, const WeightedJet& phi);

/// Contracted Bianchi residual W,₀ − (A₁₁,¹¹ + A₁̄₁̄,¹̄¹̄); vanishes
/// identically on every pseudohermitian structure.
WeightedJet bianchiResidual(const Structure& S);

}  // namespace torsionflow

#endif
