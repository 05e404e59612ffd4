#include <doctest.h>

#include <complex>

#include "torsionflow/geometry.hpp"

using namespace torsionflow;

namespace {

LeftInvariantStructure chartPoint(double a, double b, double c, double s = 1.0) {
  LeftInvariantStructure S;
  S.algebra = su2Algebra();
  S.theta = Eigen::Vector3d(0, 0, s);
  S.J << a, b, c, -a;
  return S;
}

const LeftInvariantStructure& canonical() {
  static const LeftInvariantStructure S = chartPoint(0, 1, -1);
  return S;
}

}  // namespace

TEST_CASE("Jacobi identity check accepts Lie algebras and rejects fakes") {
  CHECK(jacobiCheck(su2Algebra()));
  CHECK(jacobiCheck(heisenbergAlgebra()));

  // Flipping one bracket's sign in the su(2) table leaves a genuine Lie
  // algebra (it is so(2,1)), so that is NOT a negative example.
  LieAlgebra3 flipped = su2Algebra();
  flipped.c[0](1, 2) = -2.0;
  flipped.c[0](2, 1) = 2.0;
  CHECK(jacobiCheck(flipped));

  // Adding an extra constant to the so(3)-type table does break Jacobi.
  LieAlgebra3 broken = su2Algebra();
  broken.c[0](0, 1) = 1.0;
  broken.c[0](1, 0) = -1.0;
  CHECK(!jacobiCheck(broken));

  // Non-antisymmetric tables are rejected outright.
  LieAlgebra3 asym = su2Algebra();
  asym.c[2](0, 1) = 2.0;
  asym.c[2](1, 0) = 2.0;
  CHECK(!jacobiCheck(asym));
}

TEST_CASE("contact volume and Reeb vector") {
  const LieAlgebra3 g = su2Algebra();
  CHECK(contactVolume(g, Eigen::Vector3d(0, 0, 1)) == doctest::Approx(2.0));
  // theta = s sigma^3 scales the volume by s^2.
  CHECK(contactVolume(g, Eigen::Vector3d(0, 0, 2)) == doctest::Approx(8.0));
  const Eigen::Vector3d T = reebVector(g, Eigen::Vector3d(0, 0, 1));
  CHECK((T - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);
  const Eigen::Vector3d T2 = reebVector(g, Eigen::Vector3d(0, 0, 2));
  CHECK((T2 - Eigen::Vector3d(0, 0, 0.5)).norm() < 1e-14);
}

TEST_CASE("adapted coframe satisfies its defining relations") {
  const AdaptedCoframe cf = adaptedCoframe(canonical());
  CHECK(coframeResidual(cf) < 1e-13);
  // Phase convention: theta^1(e1) is real positive.
  CHECK(cf.theta1(0).real() > 0.0);
  CHECK(std::abs(cf.theta1(0).imag()) < 1e-14);
}

TEST_CASE("canonical structure solves to (A, W) = (0, 2) with r = -2i") {
  const PseudohermitianGeometry g = geometryOf(canonical());
  CHECK(std::abs(g.p) < 1e-13);
  CHECK(std::abs(g.q) < 1e-13);
  CHECK(std::abs(g.r - std::complex<double>(0, -2)) < 1e-13);
  CHECK(std::abs(g.A11) < 1e-13);
  CHECK(g.W == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(g.ricci == doctest::Approx(g.W).epsilon(1e-15));
  const AdaptedCoframe cf = adaptedCoframe(canonical());
  CHECK(structureEquationResidual(cf, g) < 1e-12);
}

TEST_CASE("scale weights: W and A carry weight -1 in s") {
  const PseudohermitianGeometry g4 = geometryOf(chartPoint(0, 1, -1, 4));
  CHECK(g4.W == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(g4.A11) < 1e-13);
  const PseudohermitianGeometry gp1 = geometryOf(chartPoint(0.3, 1.09 / 1.2, -1.2, 1.0));
  const PseudohermitianGeometry gp2 = geometryOf(chartPoint(0.3, 1.09 / 1.2, -1.2, 2.0));
  CHECK(gp2.W == doctest::Approx(gp1.W / 2).epsilon(1e-12));
  CHECK(std::abs(gp2.A11 - gp1.A11 / 2.0) < 1e-12);
}

TEST_CASE("Heisenberg structure is flat") {
  LeftInvariantStructure H;
  H.algebra = heisenbergAlgebra();
  H.theta = Eigen::Vector3d(0, 0, 1);
  H.J << 0, 1, -1, 0;
  const PseudohermitianGeometry g = geometryOf(H);
  CHECK(std::abs(g.A11) < 1e-13);
  CHECK(std::abs(g.W) < 1e-13);
}

TEST_CASE("closed chart forms for torsion and curvature") {
  // For theta = s sigma^3, J = [[a, b], [c, -a]] with a^2 + bc = -1, c < 0:
  // W = (b - c)/s and A11 = -i(c^2 - bc - 2 + 2ia)/(c s).
  const double a = 0.3, c = -1.2, b = (1 + a * a) / 1.2, s = 0.7;
  const PseudohermitianGeometry g = geometryOf(chartPoint(a, b, c, s));
  CHECK(g.W == doctest::Approx((b - c) / s).epsilon(1e-12));
  const std::complex<double> expectA =
      std::complex<double>(0, -1) * (c * c - b * c - 2 + std::complex<double>(0, 2 * a)) /
      (c * s);
  CHECK(std::abs(g.A11 - expectA) < 1e-12);
}

TEST_CASE("degenerate inputs are rejected") {
  LeftInvariantStructure S = canonical();
  S.theta = Eigen::Vector3d(0, 0, 0);
  CHECK_THROWS_AS(adaptedCoframe(S), DegenerateContact);

  LeftInvariantStructure offPlane = canonical();
  offPlane.theta = Eigen::Vector3d(0.5, 0, 1);
  CHECK_THROWS(adaptedCoframe(offPlane));

  LeftInvariantStructure badJ = canonical();
  badJ.J << 1, 0, 0, 1;  // J^2 = +I
  CHECK_THROWS_AS(adaptedCoframe(badJ), NonCompatibleJ);
}

TEST_CASE("perturbing the solved components raises the equation residual") {
  const AdaptedCoframe cf = adaptedCoframe(canonical());
  const PseudohermitianGeometry g = geometryOf(canonical());
  const double base = structureEquationResidual(cf, g);
  PseudohermitianGeometry gw = g;
  gw.W += 0.5;
  CHECK(structureEquationResidual(cf, gw) > base + 0.1);
  PseudohermitianGeometry ga = g;
  ga.A11 += std::complex<double>(0.2, -0.1);
  CHECK(structureEquationResidual(cf, ga) > base + 0.05);
  PseudohermitianGeometry gq = g;
  gq.q += 0.3;
  CHECK(structureEquationResidual(cf, gq) > base + 0.05);
}

TEST_CASE("exact geometry agrees with the floating solver") {
  // Canonical values are exact rationals.
  const ExactGeometry canon = exactGeometry(su2Algebra(), rat(1), rat(0), rat(1), rat(-1));
  CHECK(canon.A11.isZero());
  CHECK(canon.W == Poly::constant(RationalComplex(2)));
  CHECK(canon.q.isZero());
  CHECK(canon.r == Poly::constant(RationalComplex(Rational(0), Rational(-2))));
  const ExactGeometry s4 = exactGeometry(su2Algebra(), rat(4), rat(0), rat(1), rat(-1));
  CHECK(s4.W == Poly::constant(RationalComplex(rat(1, 2))));

  // Torsion-carrying rational chart point (1, 1, -2): cross-check every
  // component against the double-precision solve.
  const ExactGeometry ex = exactGeometry(su2Algebra(), rat(1), rat(1), rat(1), rat(-2));
  const PseudohermitianGeometry g = geometryOf(chartPoint(1, 1, -2));
  CHECK(std::abs(ex.q.evalDouble(0, 0, 0) - g.q) < 1e-13);
  CHECK(std::abs(ex.r.evalDouble(0, 0, 0) - g.r) < 1e-13);
  CHECK(std::abs(ex.A11.evalDouble(0, 0, 0) - g.A11) < 1e-13);
  CHECK(std::abs(ex.W.evalDouble(0, 0, 0).real() - g.W) < 1e-13);

  const ExactGeometry heis =
      exactGeometry(heisenbergAlgebra(), rat(1), rat(0), rat(1), rat(-1));
  CHECK(heis.A11.isZero());
  CHECK(heis.W.isZero());

  // Chart points whose Levi factor leaves Q(sqrt2) are rejected.
  CHECK_THROWS_AS(exactGeometry(su2Algebra(), rat(1), rat(0), rat(1, 3), rat(-3)),
                  std::domain_error);
}

TEST_CASE("exact square roots in the radical extension") {
  Rational root;
  bool timesSqrt2 = false;
  REQUIRE(sqrtExact(rat(4), root, timesSqrt2));
  CHECK(root == rat(2));
  CHECK(!timesSqrt2);
  REQUIRE(sqrtExact(rat(2), root, timesSqrt2));
  CHECK(root == rat(1));
  CHECK(timesSqrt2);
  REQUIRE(sqrtExact(rat(9, 8), root, timesSqrt2));
  CHECK(root == rat(3, 4));
  CHECK(timesSqrt2);
  CHECK(!sqrtExact(rat(3), root, timesSqrt2));
}
