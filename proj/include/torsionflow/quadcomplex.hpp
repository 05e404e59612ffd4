#ifndef TORSIONFLOW_QUADCOMPLEX_HPP
#define TORSIONFLOW_QUADCOMPLEX_HPP

#include <quadmath.h>

#include "torsionflow/polynomial.hpp"
#include "torsionflow/rational.hpp"

namespace torsionflow {

/// 113-bit binary float; the finite-difference oracle works at this precision
/// so that fourth-order nested difference quotients keep usable accuracy.
using QReal = __float128;

QReal toQuad(const Rational& r);

/// Complex number over QReal with just the operations the oracle needs.
struct QComplex {
  QReal re = 0;
  QReal im = 0;

  QComplex() = default;
  QComplex(QReal r) : re(r) {}
  QComplex(QReal r, QReal i) : re(r), im(i) {}

  static QComplex i() { return QComplex(0, 1); }

  QComplex conj() const { return QComplex(re, -im); }
  QComplex timesI() const { return QComplex(-im, re); }
  QReal abs() const { return hypotq(re, im); }

  QComplex operator-() const { return QComplex(-re, -im); }
  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return QComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend QComplex operator*(QReal s, const QComplex& a) {
    return QComplex(s * a.re, s * a.im);
  }
  friend QComplex operator/(const QComplex& a, QReal s) {
    return QComplex(a.re / s, a.im / s);
  }
  friend QComplex operator/(const QComplex& a, const QComplex& b) {
    QReal n = b.re * b.re + b.im * b.im;
    return QComplex((a.re * b.re + a.im * b.im) / n,
                    (a.im * b.re - a.re * b.im) / n);
  }
};

inline QComplex qexp(const QComplex& z) {
  QReal m = expq(z.re);
  return QComplex(m * cosq(z.im), m * sinq(z.im));
}

QComplex toQuad(const RationalComplex& c);

/// Evaluates an exact polynomial at a quad-precision point.
QComplex evalQuad(const Poly& p, QReal x, QReal y, QReal t);

}  // namespace torsionflow

#endif
