#ifndef TORSIONFLOW_CONFORMAL_HPP
#define TORSIONFLOW_CONFORMAL_HPP

#include <stdexcept>
#include <string>

#include "torsionflow/structure.hpp"

namespace torsionflow {

/// Thrown when an identity is requested outside its validity domain.
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& what)
      : std::runtime_error(what) {}
};

/// Rescale data for θ → e^{2f}θ. The factor f is a real polynomial; its
/// exponentials enter jets through the shared background at direction `dir`,
/// so several rescales (f, g, f+g) can coexist exactly over one background.
struct ConformalChange {
  Poly f;
  BackgroundPtr bg;
  Weight dir;
};

/// Change with a fresh single-factor background.
ConformalChange makeChange(Poly f);

/// Change by factor `slot` of an existing background.
ConformalChange changeAt(BackgroundPtr bg, std::size_t slot);

/// Change by the weighted sum Σ dir_i · factor_i of an existing background.
ConformalChange combinedChange(BackgroundPtr bg, Weight dir);

/// e^{k·f} as an exact jet.
WeightedJet expOf(const ConformalChange& c, int k);

/// The rescaled structure: adapted coframe θ̂ = e^{2f}θ,
/// θ̂¹ = e^{f}(θ¹ + 2if¹θ), dual frame, connection, torsion
/// Â₁₁ = e^{−2f}(A₁₁ + 2if₁₁ − 4if₁f₁), and scalar curvature
/// Ŵ = e^{−2f}(W − 4Δ_bf − 8f₁f¹). All right-side derivatives are taken in
/// the base structure, so rescales compose.
Structure hatStructure(const Structure& base, const ConformalChange& c);

enum class IdentityId {
  LEE_33,          // first-order transformation identity of W₁ − iA₁₁,¹
  LEE_331,         // its divergence form with the fourth-order operator
  PANEITZ_33B,     // covariance of the third-order operator, weight e^{−3f}
  PANEITZ_P0_COV,  // covariance of the fourth-order operator, weight e^{−4f}
  GAUGE_BIANCHI,   // η₁ + iF₁¹̄,₁̄ for (F, η) = (Â, −Ŵ), pluriharmonic f
  BIANCHI_W0       // contracted Bianchi identity on the rescaled structure
};

struct IdentityResidualReport {
  WeightedJet residual;
  bool is_zero;
  double max_abs;  // of the residual over the 27-point rational sample grid
};

/// Left side minus right side of the identity for the rescale of the flat
/// model by `change`, as an exact jet.
IdentityResidualReport identityResidual(IdentityId id, const ConformalChange& change);

/// True iff the third-order operator annihilates g on the flat model, i.e.
/// g is a real part of a CR-holomorphic function.
bool isPluriharmonic(const Poly& g);

/// Largest |jet| over the 27-point sample grid.
double maxAbsOnGrid(const WeightedJet& j);

}  // namespace torsionflow

#endif
