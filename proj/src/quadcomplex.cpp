#include "torsionflow/quadcomplex.hpp"

namespace torsionflow {

namespace {

QReal mpzToQuad(const mpz_class& z) {
  mpz_srcptr p = z.get_mpz_t();
  const size_t n = mpz_size(p);
  const QReal base = ldexpq(1, GMP_NUMB_BITS);
  QReal acc = 0;
  for (size_t idx = n; idx-- > 0;)
    acc = acc * base + static_cast<QReal>(mpz_getlimbn(p, idx));
  return mpz_sgn(p) < 0 ? -acc : acc;
}

}  // namespace

QReal toQuad(const Rational& r) {
  return mpzToQuad(r.get_num()) / mpzToQuad(r.get_den());
}

QComplex toQuad(const RationalComplex& c) {
  return QComplex(toQuad(c.re), toQuad(c.im));
}

QComplex evalQuad(const Poly& p, QReal x, QReal y, QReal t) {
  const QReal s2 = sqrtq(2);
  QComplex acc;
  for (const Poly::Term& term : p.terms()) {
    QReal mono = 1;
    for (unsigned k = 0; k < expX(term.m); ++k) mono *= x;
    for (unsigned k = 0; k < expY(term.m); ++k) mono *= y;
    for (unsigned k = 0; k < expT(term.m); ++k) mono *= t;
    if (expS(term.m)) mono *= s2;
    acc += mono * toQuad(term.c);
  }
  return acc;
}

}  // namespace torsionflow
