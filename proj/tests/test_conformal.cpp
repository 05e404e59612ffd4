#include <doctest.h>

#include "torsionflow/conformal.hpp"

using namespace torsionflow;

namespace {
const Structure& flat() {
  static const Structure S = flatStructure();
  return S;
}
const Poly kZZ = Poly::x() * Poly::x() + Poly::y() * Poly::y();
}  // namespace

TEST_CASE("rescale by f = x: closed-form hatted components") {
  const ConformalChange c = makeChange(Poly::x());
  const Structure hat = hatStructure(flat(), c);
  // A-hat = -(i/2) e^{-2x}: the flat torsion is zero and only the
  // first-derivative square contributes.
  CHECK(hat.A11 == expOf(c, -2).scaled(RationalComplex(Rational(0), rat(-1, 2))));
  CHECK(hat.W == expOf(c, -2).scaled(RationalComplex(-1)));
  CHECK(hat.r == expOf(c, -2).scaled(RationalComplex(Rational(0), rat(-1, 2))));
  CHECK(hat.p == hat.q.conj().scaled(RationalComplex(-1)));
}

TEST_CASE("rescale by f = t: closed-form hatted components") {
  const ConformalChange c = makeChange(Poly::t());
  const Structure hat = hatStructure(flat(), c);
  const Poly zbar2 = Poly::zbar() * Poly::zbar();
  CHECK(hat.A11 ==
        expOf(c, -2).mulPoly(zbar2).scaled(RationalComplex(Rational(0), Rational(2))));
  CHECK(hat.W == expOf(c, -2).mulPoly(kZZ.scaled(RationalComplex(-4))));
}

TEST_CASE("transformation identities hold exactly for sample factors") {
  const Poly samples[] = {Poly::x(), Poly::t(), kZZ, Poly::t() * Poly::t(),
                          Poly::x() * Poly::y() * Poly::t()};
  for (const Poly& f : samples) {
    const ConformalChange c = makeChange(f);
    for (IdentityId id : {IdentityId::LEE_33, IdentityId::LEE_331,
                          IdentityId::PANEITZ_33B, IdentityId::PANEITZ_P0_COV,
                          IdentityId::BIANCHI_W0}) {
      const IdentityResidualReport rep = identityResidual(id, c);
      CHECK(rep.is_zero);
      CHECK(rep.max_abs == 0.0);
    }
  }
}

TEST_CASE("gauge identity for pluriharmonic factors, guarded otherwise") {
  const Poly x2y2 = Poly::x() * Poly::x() - Poly::y() * Poly::y();
  for (const Poly& f : {Poly::t(), Poly::x(), x2y2, kZZ}) {
    const IdentityResidualReport rep =
        identityResidual(IdentityId::GAUGE_BIANCHI, makeChange(f));
    CHECK(rep.is_zero);
  }
  CHECK_THROWS_AS(
      identityResidual(IdentityId::GAUGE_BIANCHI, makeChange(Poly::t() * Poly::t())),
      PreconditionViolated);
}

TEST_CASE("commutation relations survive rescaling") {
  const Poly phi = Poly::x() * Poly::t() + Poly::y() * Poly::y() * Poly::x();
  for (const Poly& f : {Poly::x(), Poly::t()}) {
    const Structure hat = hatStructure(flat(), makeChange(f));
    CHECK(commutationMixedResidual(hat, WeightedJet(phi)).isZero());
    CHECK(commutationReebResidual(hat, WeightedJet(phi)).isZero());
    CHECK(bianchiResidual(hat).isZero());
  }
}

TEST_CASE("fourth-order operator equals its factored form off the flat model") {
  const Poly phi = Poly::x() * Poly::t() + Poly::y() * Poly::y() * Poly::x();
  for (const Poly& f : {Poly::x(), Poly::t()}) {
    const Structure hat = hatStructure(flat(), makeChange(f));
    CHECK(paneitzP0(hat, WeightedJet(phi)) == paneitzP0Factored(hat, WeightedJet(phi)));
  }
}

TEST_CASE("successive rescales compose additively in the factor") {
  const BackgroundPtr bg = makeBackground({Poly::x(), Poly::y()});
  const ConformalChange c1 = changeAt(bg, 0);
  const ConformalChange c2 = changeAt(bg, 1);
  const ConformalChange c12 = combinedChange(bg, {1, 1});
  const Structure once = hatStructure(hatStructure(flat(), c1), c2);
  const Structure direct = hatStructure(flat(), c12);
  CHECK(once.A11 == direct.A11);
  CHECK(once.W == direct.W);
  CHECK(once.p == direct.p);
  CHECK(once.q == direct.q);
  CHECK(once.r == direct.r);
}

TEST_CASE("exponential jets of a change invert exactly") {
  const ConformalChange c = makeChange(kZZ);
  CHECK(expOf(c, 2) * expOf(c, -2) == WeightedJet(Poly::constant(RationalComplex(1))));
  CHECK(expOf(c, 0) == WeightedJet(Poly::constant(RationalComplex(1))));
}
