#ifndef TORSIONFLOW_RATIONAL_HPP
#define TORSIONFLOW_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <string>

namespace torsionflow {

using Rational = mpq_class;

/// Makes the canonical rational p/q. q must be nonzero.
inline Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Complex number with exact rational real and imaginary parts.
struct RationalComplex {
  Rational re;
  Rational im;

  RationalComplex() : re(0), im(0) {}
  RationalComplex(Rational r) : re(std::move(r)), im(0) {}
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  RationalComplex(long r) : re(r), im(0) {}

  static RationalComplex i() { return RationalComplex(Rational(0), Rational(1)); }

  bool isZero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool isReal() const { return sgn(im) == 0; }

  RationalComplex conj() const { return RationalComplex(re, -im); }

  RationalComplex operator-() const { return RationalComplex(-re, -im); }

  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }

  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    const bool ar = sgn(a.im) == 0, br = sgn(b.im) == 0;
    if (ar && br) return RationalComplex(a.re * b.re);
    if (ar) return RationalComplex(a.re * b.re, a.re * b.im);
    if (br) return RationalComplex(a.re * b.re, a.im * b.re);
    return RationalComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }

  /// Multiplies by a plain integer in place.
  void scaleInt(long k) {
    re *= k;
    im *= k;
  }

  /// Multiplies by i in place.
  void timesI() {
    swap(re, im);
    re = -re;
  }

  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return cmp(a.re, b.re) == 0 && cmp(a.im, b.im) == 0;
  }

  std::complex<double> toDouble() const { return {re.get_d(), im.get_d()}; }

  std::string str() const {
    if (sgn(im) == 0) return re.get_str();
    return re.get_str() + (sgn(im) < 0 ? "-" : "+") + Rational(abs(im)).get_str() + "*i";
  }
};

}  // namespace torsionflow

#endif
