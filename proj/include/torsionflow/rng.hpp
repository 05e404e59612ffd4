#ifndef TORSIONFLOW_RNG_HPP
#define TORSIONFLOW_RNG_HPP

#include <cstdint>
#include <random>

#include "torsionflow/heisenberg.hpp"
#include "torsionflow/polynomial.hpp"

namespace torsionflow {

/// Deterministic random source. A fixed-seed mt19937_64 with explicit
/// modulo reduction, so every draw depends only on the seed and the call
/// order — never on library distribution internals.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  /// Uniform integer in [lo, hi].
  long intIn(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Coefficient rational p/q with p ∈ [−9, 9], q ∈ [1, 9].
  Rational rational() {
    long p = intIn(-9, 9);
    long q = intIn(1, 9);
    return rat(p, q);
  }

  RationalComplex rationalComplex() {
    Rational re = rational();
    Rational im = rational();
    return {re, im};
  }

  /// Real polynomial of total degree ≤ deg in (x, y, t), one independent
  /// coefficient per monomial.
  Poly realPoly(unsigned deg) {
    Poly out = Poly::zero();
    for (unsigned a = 0; a <= deg; ++a)
      for (unsigned b = 0; a + b <= deg; ++b)
        for (unsigned c = 0; a + b + c <= deg; ++c)
          out = out + Poly::monomial(a, b, c, 0, RationalComplex(rational()));
    return out;
  }

  /// Complex-coefficient polynomial of total degree ≤ deg in (x, y, t).
  Poly complexPoly(unsigned deg) {
    Poly out = Poly::zero();
    for (unsigned a = 0; a <= deg; ++a)
      for (unsigned b = 0; a + b <= deg; ++b)
        for (unsigned c = 0; a + b + c <= deg; ++c)
          out = out + Poly::monomial(a, b, c, 0, rationalComplex());
    return out;
  }

  /// Real part of a random holomorphic polynomial in (z, t + i(x²+y²)) of
  /// total degree ≤ deg; lies in the kernel of the third-order operator by
  /// construction.
  Poly pluriharmonicPoly(unsigned deg) {
    std::vector<heisenberg::HoloTerm> terms;
    for (unsigned a = 0; a <= deg; ++a)
      for (unsigned b = 0; a + b <= deg; ++b)
        terms.emplace_back(a, b, rationalComplex());
    return heisenberg::pluriharmonicGenerator(terms);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace torsionflow

#endif
