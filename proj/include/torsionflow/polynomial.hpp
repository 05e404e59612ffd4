#ifndef TORSIONFLOW_POLYNOMIAL_HPP
#define TORSIONFLOW_POLYNOMIAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "torsionflow/rational.hpp"

namespace torsionflow {

/// Monomial key x^ex y^ey t^et (sqrt2)^es packed as ex<<24 | ey<<16 | et<<8 | es.
/// es is kept reduced to {0,1}; products fold (sqrt2)^2 into the coefficient.
using Monomial = std::uint32_t;

inline Monomial packMonomial(unsigned ex, unsigned ey, unsigned et, unsigned es) {
  return (ex << 24) | (ey << 16) | (et << 8) | es;
}
inline unsigned expX(Monomial m) { return (m >> 24) & 0xff; }
inline unsigned expY(Monomial m) { return (m >> 16) & 0xff; }
inline unsigned expT(Monomial m) { return (m >> 8) & 0xff; }
inline unsigned expS(Monomial m) { return m & 0xff; }

/// Exact multivariate polynomial in the Heisenberg coordinates (x, y, t) with
/// complex rational coefficients, extended by the formal square root of two so
/// that frame constants stay representable. Terms are kept sorted by monomial
/// key with all zero coefficients removed.
class Poly {
 public:
  struct Term {
    Monomial m;
    RationalComplex c;

    friend bool operator==(const Term& a, const Term& b) {
      return a.m == b.m && a.c == b.c;
    }
  };

  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly constant(RationalComplex c);
  static Poly monomial(unsigned ex, unsigned ey, unsigned et, unsigned es, RationalComplex c);
  static Poly x() { return monomial(1, 0, 0, 0, RationalComplex(1)); }
  static Poly y() { return monomial(0, 1, 0, 0, RationalComplex(1)); }
  static Poly t() { return monomial(0, 0, 1, 0, RationalComplex(1)); }
  /// sqrt2 * c as a polynomial.
  static Poly sqrt2(RationalComplex c = RationalComplex(1)) {
    return monomial(0, 0, 0, 1, std::move(c));
  }
  static Poly z();     // x + i y
  static Poly zbar();  // x - i y

  const std::vector<Term>& terms() const { return t_; }
  bool isZero() const { return t_.empty(); }
  bool isConstant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == 0); }
  bool isReal() const;
  /// Total degree in (x, y, t); -1 for the zero polynomial.
  int degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

  Poly scaled(const RationalComplex& c) const;
  Poly timesI() const;
  Poly conj() const;

  /// Coordinate partial derivative; var is 0 for x, 1 for y, 2 for t.
  Poly derivative(int var) const;

  /// Adds c * m * p to this polynomial.
  void addScaledMonomial(const Poly& p, Monomial m, const RationalComplex& c);

  /// Coefficient of an exact monomial key (zero if absent).
  RationalComplex coefficient(Monomial m) const;

  std::string str() const;

  /// Exact evaluation at a rational point; sqrt2 stays symbolic so the result
  /// is a pair (a, b) meaning a + b * sqrt2.
  struct ExactValue {
    RationalComplex a;
    RationalComplex b;
  };
  ExactValue evalExact(const Rational& px, const Rational& py, const Rational& pt) const;

  std::complex<double> evalDouble(double px, double py, double pt) const;

 private:
  std::vector<Term> t_;

  void prune();
  friend class PolyBuilder;
};

/// Accumulates terms out of order, then assembles a canonical Poly.
class PolyBuilder {
 public:
  void add(Monomial m, const RationalComplex& c);
  Poly build();

 private:
  std::vector<Poly::Term> acc_;
};

}  // namespace torsionflow

#endif
