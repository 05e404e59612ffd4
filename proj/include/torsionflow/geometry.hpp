#ifndef TORSIONFLOW_GEOMETRY_HPP
#define TORSIONFLOW_GEOMETRY_HPP

#include <complex>
#include <stdexcept>

#include "torsionflow/liealgebra.hpp"
#include "torsionflow/polynomial.hpp"

namespace torsionflow {

struct DegenerateContact : std::runtime_error {
  explicit DegenerateContact(const std::string& what) : std::runtime_error(what) {}
};
struct NonCompatibleJ : std::runtime_error {
  explicit NonCompatibleJ(const std::string& what) : std::runtime_error(what) {}
};
struct SingularSystem : std::runtime_error {
  explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

/// Left-invariant contact structure: θ in the dual basis σ^i, and the
/// almost-complex structure J as a real 2×2 matrix in the (e₁, e₂)
/// coordinates of the contact plane (the structure requires ker θ to be
/// spanned by e₁, e₂, i.e. θ = (0, 0, θ₃)).
struct LeftInvariantStructure {
  LieAlgebra3 algebra;
  Eigen::Vector3d theta;
  Eigen::Matrix2d J;
};

/// |θ∧dθ(e₁,e₂,e₃)| — the Haar-normalized volume of the structure;
/// nonzero iff θ is contact.
double contactVolume(const LieAlgebra3& g, const Eigen::Vector3d& theta);

/// The unique T with θ(T) = 1 and dθ(T, ·) = 0.
Eigen::Vector3d reebVector(const LieAlgebra3& g, const Eigen::Vector3d& theta);

/// Frame (T, Z₁) and coframe (θ, θ¹) adapted to a structure:
/// θ(T) = 1, dθ(T,·) = 0, θ¹ dual to Z₁, dθ = iθ¹∧θ¹̄.
struct AdaptedCoframe {
  LieAlgebra3 algebra;
  Eigen::Vector3d theta;
  Eigen::Vector3d T;
  Eigen::Vector3cd Z1;
  Eigen::Vector3cd theta1;
};

/// Builds the adapted coframe with Z₁ ∝ e₁ − iJe₁ (the +i eigenvector of
/// J), Levi-normalized by a real positive factor — which also makes
/// θ¹(e₁) real positive, the deterministic phase choice.
AdaptedCoframe adaptedCoframe(const LeftInvariantStructure& S);

/// Worst deviation of the coframe from its defining relations (duality
/// pairings and the Levi normalization dθ(Z₁,Z₁̄) = i).
double coframeResidual(const AdaptedCoframe& cf);

/// Connection coefficients ω₁¹ = pθ¹ + qθ¹̄ + rθ, torsion A₁₁, scalar
/// curvature W (= the Ricci component at this dimension).
struct PseudohermitianGeometry {
  std::complex<double> p, q, r;
  std::complex<double> A11;
  double W;
  double ricci;
};

/// Reads the unique connection and torsion off dθ¹ = θ¹∧ω₁¹ + θ∧τ¹ with
/// τ¹ = conj(A₁₁)θ¹̄ and ω₁¹ + ω₁̄¹̄ = 0, then W from dω₁¹; throws
/// SingularSystem if the coframe is not dual to the frame.
PseudohermitianGeometry solveStructureEquations(const AdaptedCoframe& cf);

/// Residual of the solved structure equation over all frame pairs plus
/// the reality constraints and the curvature pairing against the stored
/// W; ≤ 1e−12 for a valid adapted coframe.
double structureEquationResidual(const AdaptedCoframe& cf,
                                 const PseudohermitianGeometry& geom);

PseudohermitianGeometry geometryOf(const LeftInvariantStructure& S);

/// √v in Q(√2) when it exists: v = root² (timesSqrt2 = false) or
/// v = 2·root² (timesSqrt2 = true).
bool sqrtExact(const Rational& v, Rational& root, bool& timesSqrt2);

/// Exact-arithmetic geometry over Q(i, √2), carried by constant
/// polynomials; for regression fixtures with rational chart data.
struct ExactGeometry {
  Poly p, q, r, A11, W;
};

/// θ = s·σ³, J = [[a, b], [c, −a]] with a² + bc = −1 on the positivity
/// branch c < 0; requires the Levi factor to have an exact square root in
/// Q(√2), else throws std::domain_error.
ExactGeometry exactGeometry(const LieAlgebra3& g, const Rational& s,
                            const Rational& a, const Rational& b,
                            const Rational& c);

}  // namespace torsionflow

#endif
