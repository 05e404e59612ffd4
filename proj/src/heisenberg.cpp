#include "torsionflow/heisenberg.hpp"

namespace torsionflow::heisenberg {

namespace {
const Poly& half() {
  static const Poly h = Poly::constant(rat(1, 2));
  return h;
}
const Poly& invSqrt2() {
  static const Poly s = Poly::sqrt2(rat(1, 2));  // 1/√2 = √2/2
  return s;
}
}  // namespace

WeightedJet dZ1(const WeightedJet& j) {
  // ∂_z = (∂x − i ∂y)/2, then + i z̄ ∂t, all scaled by 1/√2.
  WeightedJet dz = (j.partial(0) - j.partial(1).timesI()).scaled(rat(1, 2));
  WeightedJet r = dz + j.partial(2).timesI().mulPoly(Poly::zbar());
  return r.mulPoly(invSqrt2());
}

WeightedJet dZ1bar(const WeightedJet& j) {
  WeightedJet dzb = (j.partial(0) + j.partial(1).timesI()).scaled(rat(1, 2));
  WeightedJet r = dzb - j.partial(2).timesI().mulPoly(Poly::z());
  return r.mulPoly(invSqrt2());
}

WeightedJet dT(const WeightedJet& j) { return j.partial(2); }

WeightedJet sublap(const WeightedJet& j) {
  return dZ1bar(dZ1(j)) + dZ1(dZ1bar(j));
}

std::array<Poly, 3> vecZ1() {
  // (1/√2)(∂_z + i z̄ ∂_t) = (√2/4) ∂x − i(√2/4) ∂y + i z̄ (√2/2) ∂t.
  return {Poly::sqrt2(rat(1, 4)),
          Poly::sqrt2(RationalComplex(Rational(0), rat(-1, 4))),
          Poly::zbar().timesI() * invSqrt2()};
}

std::array<Poly, 3> vecZ1bar() {
  return {Poly::sqrt2(rat(1, 4)),
          Poly::sqrt2(RationalComplex(Rational(0), rat(1, 4))),
          (Poly::z().timesI() * invSqrt2()).scaled(RationalComplex(-1))};
}

std::array<Poly, 3> vecT() {
  return {Poly::zero(), Poly::zero(), Poly::constant(RationalComplex(1))};
}

std::array<Poly, 3> thetaComponents() {
  return {Poly::y().scaled(RationalComplex(-2)), Poly::x().scaled(RationalComplex(2)),
          Poly::constant(RationalComplex(1))};
}

std::array<Poly, 3> theta1Components() {
  // √2 dz = √2 dx + i√2 dy.
  return {Poly::sqrt2(), Poly::sqrt2(RationalComplex::i()), Poly::zero()};
}

Poly crCoordinate() {
  Poly zz = Poly::x() * Poly::x() + Poly::y() * Poly::y();
  return Poly::t() + zz.timesI();
}

Poly holomorphicMonomial(unsigned a, unsigned b) {
  Poly r = Poly::constant(RationalComplex(1));
  for (unsigned i = 0; i < a; ++i) r = r * Poly::z();
  const Poly w = crCoordinate();
  for (unsigned i = 0; i < b; ++i) r = r * w;
  return r;
}

Poly holomorphicPoly(const std::vector<HoloTerm>& terms) {
  Poly r;
  for (const auto& [a, b, c] : terms) r += holomorphicMonomial(a, b).scaled(c);
  return r;
}

Poly pluriharmonicGenerator(const std::vector<HoloTerm>& terms) {
  Poly h = holomorphicPoly(terms);
  return (h + h.conj()).scaled(rat(1, 2));
}

}  // namespace torsionflow::heisenberg
