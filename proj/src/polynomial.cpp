#include "torsionflow/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace torsionflow {

namespace {

// Multiplies two reduced monomials; when both carry the sqrt2 bit the square
// collapses to the rational factor 2, reported through coeffScale.
inline Monomial mulMonomial(Monomial a, Monomial b, long& coeffScale) {
  Monomial sum = a + b;  // exponent fields are independent bytes
  coeffScale = 1;
  if ((sum & 0xff) == 2) {
    sum -= 2;
    coeffScale = 2;
  }
  return sum;
}

}  // namespace

Poly Poly::constant(RationalComplex c) {
  Poly p;
  if (!c.isZero()) p.t_.push_back({0, std::move(c)});
  return p;
}

Poly Poly::monomial(unsigned ex, unsigned ey, unsigned et, unsigned es, RationalComplex c) {
  if (ex > 0xff || ey > 0xff || et > 0xff || es > 1)
    throw std::invalid_argument("monomial exponent out of range");
  Poly p;
  if (!c.isZero()) p.t_.push_back({packMonomial(ex, ey, et, es), std::move(c)});
  return p;
}

Poly Poly::z() {
  Poly p = x();
  p += monomial(0, 1, 0, 0, RationalComplex::i());
  return p;
}

Poly Poly::zbar() {
  Poly p = x();
  p -= monomial(0, 1, 0, 0, RationalComplex::i());
  return p;
}

bool Poly::isReal() const {
  for (const Term& term : t_)
    if (!term.c.isReal()) return false;
  return true;
}

int Poly::degree() const {
  int d = -1;
  for (const Term& term : t_) {
    int total = static_cast<int>(expX(term.m) + expY(term.m) + expT(term.m));
    d = std::max(d, total);
  }
  return d;
}

void Poly::prune() {
  t_.erase(std::remove_if(t_.begin(), t_.end(),
                          [](const Term& term) { return term.c.isZero(); }),
           t_.end());
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Term& term : r.t_) term.c = -term.c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(t_.size() + o.t_.size());
  auto a = t_.begin();
  auto b = o.t_.begin();
  while (a != t_.end() && b != o.t_.end()) {
    if (a->m < b->m) {
      merged.push_back(std::move(*a++));
    } else if (b->m < a->m) {
      merged.push_back(*b++);
    } else {
      Term sum{a->m, a->c + b->c};
      if (!sum.c.isZero()) merged.push_back(std::move(sum));
      ++a;
      ++b;
    }
  }
  merged.insert(merged.end(), a, t_.end());
  merged.insert(merged.end(), b, o.t_.end());
  t_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  r += b;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  r -= b;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  PolyBuilder acc;
  for (const Poly::Term& ta : a.terms()) {
    for (const Poly::Term& tb : b.terms()) {
      long scale = 1;
      Monomial m = mulMonomial(ta.m, tb.m, scale);
      RationalComplex c = ta.c * tb.c;
      if (scale != 1) c.scaleInt(scale);
      acc.add(m, c);
    }
  }
  return acc.build();
}

Poly Poly::scaled(const RationalComplex& c) const {
  if (c.isZero()) return Poly();
  Poly r = *this;
  for (Term& term : r.t_) term.c = term.c * c;
  return r;
}

Poly Poly::timesI() const {
  Poly r = *this;
  for (Term& term : r.t_) term.c.timesI();
  return r;
}

Poly Poly::conj() const {
  Poly r = *this;
  for (Term& term : r.t_) term.c = term.c.conj();
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r;
  r.t_.reserve(t_.size());
  for (const Term& term : t_) {
    unsigned e;
    Monomial shifted;
    switch (var) {
      case 0:
        e = expX(term.m);
        shifted = term.m - (1u << 24);
        break;
      case 1:
        e = expY(term.m);
        shifted = term.m - (1u << 16);
        break;
      case 2:
        e = expT(term.m);
        shifted = term.m - (1u << 8);
        break;
      default:
        throw std::invalid_argument("derivative variable index");
    }
    if (e == 0) continue;
    Term d{shifted, term.c};
    d.c.scaleInt(static_cast<long>(e));
    r.t_.push_back(std::move(d));
  }
  // Term order is preserved by a uniform exponent shift.
  return r;
}

void Poly::addScaledMonomial(const Poly& p, Monomial m, const RationalComplex& c) {
  if (c.isZero() || p.isZero()) return;
  Poly shifted;
  shifted.t_.reserve(p.t_.size());
  for (const Term& term : p.t_) {
    long scale = 1;
    Monomial key = mulMonomial(term.m, m, scale);
    RationalComplex coeff = term.c * c;
    if (scale != 1) coeff.scaleInt(scale);
    shifted.t_.push_back({key, std::move(coeff)});
  }
  // The sqrt2 reduction can break strict ordering; rebuild canonically.
  std::sort(shifted.t_.begin(), shifted.t_.end(),
            [](const Term& a, const Term& b) { return a.m < b.m; });
  *this += shifted;
}

RationalComplex Poly::coefficient(Monomial m) const {
  auto it = std::lower_bound(
      t_.begin(), t_.end(), m,
      [](const Term& term, Monomial key) { return term.m < key; });
  if (it != t_.end() && it->m == m) return it->c;
  return RationalComplex();
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& term : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << term.c.str() << ")";
    if (expS(term.m)) os << "*s2";
    if (expX(term.m)) os << "*x^" << expX(term.m);
    if (expY(term.m)) os << "*y^" << expY(term.m);
    if (expT(term.m)) os << "*t^" << expT(term.m);
  }
  return os.str();
}

Poly::ExactValue Poly::evalExact(const Rational& px, const Rational& py,
                                 const Rational& pt) const {
  ExactValue v;
  for (const Term& term : t_) {
    Rational mono(1);
    for (unsigned k = 0; k < expX(term.m); ++k) mono *= px;
    for (unsigned k = 0; k < expY(term.m); ++k) mono *= py;
    for (unsigned k = 0; k < expT(term.m); ++k) mono *= pt;
    RationalComplex contrib = term.c * RationalComplex(mono);
    if (expS(term.m))
      v.b += contrib;
    else
      v.a += contrib;
  }
  return v;
}

std::complex<double> Poly::evalDouble(double px, double py, double pt) const {
  std::complex<double> acc(0.0, 0.0);
  const double s2 = std::sqrt(2.0);
  for (const Term& term : t_) {
    double mono = 1.0;
    for (unsigned k = 0; k < expX(term.m); ++k) mono *= px;
    for (unsigned k = 0; k < expY(term.m); ++k) mono *= py;
    for (unsigned k = 0; k < expT(term.m); ++k) mono *= pt;
    if (expS(term.m)) mono *= s2;
    acc += term.c.toDouble() * mono;
  }
  return acc;
}

void PolyBuilder::add(Monomial m, const RationalComplex& c) {
  if (c.isZero()) return;
  acc_.push_back({m, c});
}

Poly PolyBuilder::build() {
  std::sort(acc_.begin(), acc_.end(),
            [](const Poly::Term& a, const Poly::Term& b) { return a.m < b.m; });
  Poly p;
  for (Poly::Term& term : acc_) {
    if (!p.t_.empty() && p.t_.back().m == term.m) {
      p.t_.back().c += term.c;
      if (p.t_.back().c.isZero()) p.t_.pop_back();
    } else {
      p.t_.push_back(std::move(term));
    }
  }
  acc_.clear();
  return p;
}

}  // namespace torsionflow
