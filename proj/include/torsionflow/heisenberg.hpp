#ifndef TORSIONFLOW_HEISENBERG_HPP
#define TORSIONFLOW_HEISENBERG_HPP

#include <array>
#include <tuple>
#include <vector>

#include "torsionflow/jet.hpp"

namespace torsionflow::heisenberg {

/// Left-invariant frame derivations acting on exact jets:
///   Z1 = (∂_z + i z̄ ∂_t)/√2,  Z1bar = (∂_z̄ − i z ∂_t)/√2,  T = ∂_t,
/// with z = x + iy. They satisfy [Z1, Z1bar] = −iT and [Z1, T] = 0.
WeightedJet dZ1(const WeightedJet& j);
WeightedJet dZ1bar(const WeightedJet& j);
WeightedJet dT(const WeightedJet& j);

/// Flat sublaplacian (Z1bar∘Z1 + Z1∘Z1bar) j.
WeightedJet sublap(const WeightedJet& j);

/// Coordinate components of the frame in the basis (∂x, ∂y, ∂t).
std::array<Poly, 3> vecZ1();
std::array<Poly, 3> vecZ1bar();
std::array<Poly, 3> vecT();

/// Contact form θ = dt − 2y dx + 2x dy in the basis (dx, dy, dt); satisfies
/// dθ = i θ¹ ∧ θ¹̄ with θ¹ = √2 dz.
std::array<Poly, 3> thetaComponents();
std::array<Poly, 3> theta1Components();

/// CR-holomorphic coordinate w = t + i(x² + y²); Z1bar annihilates both z
/// and w, so polynomials in (z, w) are CR-holomorphic.
Poly crCoordinate();

/// z^a w^b expanded in (x, y, t).
Poly holomorphicMonomial(unsigned a, unsigned b);

/// One term of a polynomial in (z, w): exponents (a, b) and coefficient.
using HoloTerm = std::tuple<unsigned, unsigned, RationalComplex>;

/// Σ c z^a w^b expanded in (x, y, t).
Poly holomorphicPoly(const std::vector<HoloTerm>& terms);

/// Re(Σ c z^a w^b): a pluriharmonic polynomial.
Poly pluriharmonicGenerator(const std::vector<HoloTerm>& terms);

}  // namespace torsionflow::heisenberg

#endif
