#include <doctest.h>

#include <cmath>
#include <complex>

#include "torsionflow/conformal.hpp"
#include "torsionflow/variation.hpp"

using namespace torsionflow;
using cplx = std::complex<double>;

namespace {

WeightedJet constJet(long num, long den = 1) {
  return WeightedJet(Poly::constant(RationalComplex(rat(num, den))));
}

const Structure& flat() {
  static const Structure S = flatStructure();
  return S;
}

void checkRate(const VariationReport& r, double tol, bool checkRatio = true) {
  CHECK(r.abs_error <= tol);
  if (checkRatio) {
    CHECK(r.richardson_ratio > 3.2);
    CHECK(r.richardson_ratio < 4.8);
  }
}

}  // namespace

TEST_CASE("coframe rate coefficients, exact-jet context") {
  const WeightedJet zero;
  const CoframeVariation trivial = coframeVariation(flat(), {zero, constJet(3)});
  CHECK(trivial.theta_coeff.isZero());
  CHECK(trivial.theta1_coeff == constJet(3));
  CHECK(trivial.theta1bar_coeff.isZero());

  const CoframeVariation cvx = coframeVariation(flat(), {zero, WeightedJet(Poly::x())});
  // 2i eta^1 with eta^1 = Z1bar(x) = sqrt2/4.
  CHECK(cvx.theta_coeff ==
        WeightedJet(Poly::sqrt2(RationalComplex(Rational(0), rat(1, 2)))));
  CHECK(cvx.theta1bar_coeff.isZero());
}

TEST_CASE("torsion and connection rates on the flat model") {
  const WeightedJet zero;
  const JetDeformation dx{zero, WeightedJet(Poly::x())};
  CHECK(torsionVariation(flat(), dx).isZero());
  const ConnectionRicciVariation cr = connectionRicciVariation(flat(), dx);
  CHECK(cr.theta_coeff.isZero());  // i*sublap(x) = 0
  CHECK(cr.theta1_coeff == WeightedJet(Poly::sqrt2(RationalComplex(rat(3, 4)))));
  CHECK(cr.ricci.isZero());
}

TEST_CASE("scalar curvature rate fixture") {
  const Poly zz = Poly::x() * Poly::x() + Poly::y() * Poly::y();
  const JetDeformation d{WeightedJet(), WeightedJet(zz)};
  // eta = |z|^2 has sublap 1 and no higher terms: rate -4.
  CHECK(websterVariation(flat(), d) == constJet(-4));
  CHECK(websterVariation(flat(), {WeightedJet(), WeightedJet()}).isZero());
}

TEST_CASE("curvature rate equals the contracted connection rate exactly") {
  // The two independently implemented forms of the scalar rate must agree
  // on every background, and both must be real.
  const Poly f2 = Poly::monomial(1, 1, 0, 0, RationalComplex(1)) - Poly::t();
  const Structure h1 = hatStructure(flat(), makeChange(Poly::x()));
  const Structure h2 = hatStructure(flat(), makeChange(f2));

  WeightedJet E1(heisenberg::holomorphicMonomial(1, 1));
  E1 = E1.conj() + WeightedJet(Poly::monomial(2, 0, 0, 0, RationalComplex::i()));
  const WeightedJet eta1(Poly::monomial(1, 1, 0, 0, RationalComplex(1)));
  const WeightedJet E2(Poly::monomial(1, 0, 1, 0, RationalComplex(rat(1, 3))));
  const WeightedJet eta2(Poly::monomial(0, 2, 0, 0, RationalComplex(rat(-2))));

  for (const Structure* S : {&flat(), &h1, &h2}) {
    for (const JetDeformation& def :
         {JetDeformation{E1, eta1}, JetDeformation{E2, eta2}}) {
      const ConnectionRicciVariation cr = connectionRicciVariation(*S, def);
      CHECK(cr.ricci == websterVariation(*S, def));
      CHECK(cr.ricci == cr.ricci.conj());
    }
  }
}

TEST_CASE("gauge operator fixtures") {
  const WeightedJet zjet(heisenberg::holomorphicMonomial(1, 0));
  CHECK(gaugeOperatorH(flat(), zjet, constJet(5)).isZero());
  const WeightedJet zbar = zjet.conj();
  const WeightedJet twoY(Poly::y().scaled(RationalComplex(2)));
  CHECK(gaugeOperatorH(flat(), zbar, twoY).isZero());
  CHECK(gaugeOperatorH(flat(), WeightedJet(), constJet(1)).isZero());
  CHECK(!gaugeOperatorH(flat(), zbar, WeightedJet()).isZero());
  CHECK_THROWS_AS(
      gaugeOperatorH(hatStructure(flat(), makeChange(Poly::x())), zbar, twoY),
      UnsupportedBackground);
}

TEST_CASE("linearization highest-weight coefficients") {
  const Poly zz = Poly::x() * Poly::x() + Poly::y() * Poly::y();
  const WeightedJet h(zz);
  const LinearizedDeformation Lh = linearizationL(flat(), WeightedJet(), h);
  CHECK(Lh.scalar_part == constJet(10));
  CHECK(Lh.E_part.isZero());
  const LinearizedDeformation LE = linearizationL(flat(), h, WeightedJet());
  CHECK(LE.E_part == constJet(4));
  CHECK(LE.scalar_part.isZero());
  const LinearizedDeformation L0 = linearizationL(flat(), constJet(7), constJet(-2));
  CHECK(L0.E_part.isZero());
  CHECK(L0.scalar_part.isZero());
  CHECK_THROWS_AS(
      linearizationL(hatStructure(flat(), makeChange(Poly::x())), h, h),
      UnsupportedBackground);
}

TEST_CASE("homogeneous coframe and canonical rates") {
  const HomogeneousCoframeVariation hv = coframeVariation({cplx(2.0, 1.0), 0.5});
  CHECK(std::abs(hv.theta_coeff) == 0.0);
  CHECK(hv.theta1_coeff == cplx(0.5, 0.0));
  CHECK(std::abs(hv.theta1bar_coeff - cplx(0, -1) * cplx(2.0, -1.0)) < 1e-15);

  const PseudohermitianGeometry g0 = su2Geometry(canonicalStructure());
  const cplx eps(0.8, -0.6);
  CHECK(std::abs(torsionVariation(g0, {eps, 0.0}) - (-4.0 * std::conj(eps))) < 1e-12);
  CHECK(std::abs(websterVariation(g0, {eps, 0.0})) < 1e-12);
  CHECK(websterVariation(g0, {0.0, 0.7}) == doctest::Approx(-2.8).epsilon(1e-12));
  CHECK(connectionRicciVariation(g0, {0.0, 0.7}).ricci ==
        doctest::Approx(-2.8).epsilon(1e-12));
}

TEST_CASE("scalar rate at the gradient direction reproduces the dissipation law") {
  FlowState st = canonicalStructure();
  st.J << 0.4, 1.5, -0.7733333333333333, -0.4;
  st.J = retractJ(st.J);
  st.s = 0.7;
  const PseudohermitianGeometry g = su2Geometry(st);
  const double vol = einsteinHilbert(st).second;
  const double eta = -g.W;
  const double wdot = websterVariation(g, {g.A11, eta});
  const double lhs = (wdot + 4.0 * eta * g.W) * vol;
  const double rhs = -2.0 * (std::norm(g.A11) + g.W * g.W) * vol;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("finite differences confirm the rescaling rate") {
  const HomogeneousFamily fam{canonicalStructure(), {0.0, 0.1}};
  const VariationReport r = fdVerify(fam, VariationFormula::Webster, 0.0, 1e-3);
  CHECK(std::abs(r.analytic - cplx(-0.4, 0.0)) < 1e-12);
  checkRate(r, 1e-7);
}

TEST_CASE("finite differences confirm the chart-direction torsion rate") {
  const HomogeneousFamily fam{canonicalStructure(), {cplx(0.25, 0.1), 0.0}};
  const VariationReport r = fdVerify(fam, VariationFormula::TorsionBar, 0.0, 1e-3);
  CHECK(std::abs(r.analytic - (-4.0 * cplx(0.25, -0.1))) < 1e-12);
  checkRate(r, 1e-6);
}

TEST_CASE("all rate formulas verify on a torsion-carrying base") {
  FlowState base = canonicalStructure();
  base.J << 0.4, 1.5, -0.7733333333333333, -0.4;
  base.J = retractJ(base.J);
  base.s = 0.8;
  const HomogeneousFamily fam{base, {cplx(0.25, -0.1), 0.2}};
  checkRate(fdVerify(fam, VariationFormula::TorsionBar, 0.0, 1e-3), 1e-6);
  checkRate(fdVerify(fam, VariationFormula::Ricci, 0.0, 1e-3), 1e-6);
  checkRate(fdVerify(fam, VariationFormula::Webster, 0.0, 1e-3), 1e-6);
  checkRate(fdVerify(fam, VariationFormula::ConnectionTheta, 0.0, 1e-3), 1e-6);
  // On su(2) chart structures the theta^1 connection coefficients are
  // identically zero; the error bound still certifies the agreement.
  checkRate(fdVerify(fam, VariationFormula::ConnectionTheta1, 0.0, 1e-3), 1e-6,
            false);
  checkRate(fdVerify(fam, VariationFormula::ConnectionTheta1Bar, 0.0, 1e-3), 1e-6,
            false);
}

TEST_CASE("off-center evaluation recenters the family tangent") {
  const HomogeneousFamily fam{canonicalStructure(), {cplx(0.3, 0.15), -0.1}};
  checkRate(fdVerify(fam, VariationFormula::TorsionBar, 0.05, 1e-3), 1e-6);
  checkRate(fdVerify(fam, VariationFormula::Webster, 0.05, 1e-3), 1e-6);
}

TEST_CASE("constant families differentiate to exact zero") {
  const HomogeneousFamily fam{canonicalStructure(), {0.0, 0.0}};
  const VariationReport r = fdVerify(fam, VariationFormula::Webster, 0.0, 1e-3);
  CHECK(r.abs_error == 0.0);
  CHECK(std::abs(r.finite_difference) == 0.0);
}

TEST_CASE("harness domain errors") {
  const HomogeneousFamily fam{canonicalStructure(), {cplx(1.0, 0.0), 0.0}};
  CHECK_THROWS_AS(fdVerify(fam, VariationFormula::Webster, 0.0, 0.2),
                  std::invalid_argument);
  CHECK_THROWS_AS(familyPoint(fam, 1.0), FamilyEvaluationFailed);
}
