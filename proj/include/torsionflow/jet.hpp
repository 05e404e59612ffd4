#ifndef TORSIONFLOW_JET_HPP
#define TORSIONFLOW_JET_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "torsionflow/polynomial.hpp"
#include "torsionflow/quadcomplex.hpp"

namespace torsionflow {

/// Shared list of real polynomial log-factors f_1, ..., f_m. A WeightedJet
/// over this background is a finite sum of terms e^{k_1 f_1 + ... + k_m f_m}
/// times a polynomial, indexed by the integer weight vector (k_1, ..., k_m).
/// Keeping several factors in one background lets rescaling by f, then by g,
/// coexist with rescaling by f + g in a single exact arithmetic domain.
class Background {
 public:
  Background() = default;
  explicit Background(std::vector<Poly> factors);

  std::size_t size() const { return factors_.size(); }
  const Poly& factor(std::size_t i) const { return factors_[i]; }
  bool sameContent(const Background& o) const { return factors_ == o.factors_; }

 private:
  std::vector<Poly> factors_;
};

using BackgroundPtr = std::shared_ptr<const Background>;

BackgroundPtr emptyBackground();
BackgroundPtr makeBackground(std::vector<Poly> factors);

/// Integer exponent vector pairing with the background factors.
using Weight = std::vector<int>;

/// Exact finite sum  Σ_k e^{⟨k, f⟩} p_k  with polynomial parts p_k. Closed
/// under ring operations, conjugation (backgrounds are real), and coordinate
/// differentiation, hence under all frame and covariant derivatives used by
/// the rescaled-structure calculus. Equality is decidable weight by weight,
/// so identity residuals can be certified exactly zero.
class WeightedJet {
 public:
  WeightedJet() : bg_(emptyBackground()) {}
  explicit WeightedJet(Poly p);
  WeightedJet(BackgroundPtr bg, Poly p);

  /// e^{⟨w, f⟩} * p over the given background.
  static WeightedJet expTerm(BackgroundPtr bg, Weight w, Poly p);

  const BackgroundPtr& background() const { return bg_; }
  const std::map<Weight, Poly>& parts() const { return parts_; }

  bool isZero() const { return parts_.empty(); }
  bool isReal() const;

  WeightedJet operator-() const;
  friend WeightedJet operator+(const WeightedJet& a, const WeightedJet& b);
  friend WeightedJet operator-(const WeightedJet& a, const WeightedJet& b);
  friend WeightedJet operator*(const WeightedJet& a, const WeightedJet& b);
  WeightedJet& operator+=(const WeightedJet& o);
  WeightedJet& operator-=(const WeightedJet& o);
  friend bool operator==(const WeightedJet& a, const WeightedJet& b);
  friend bool operator!=(const WeightedJet& a, const WeightedJet& b) {
    return !(a == b);
  }

  WeightedJet scaled(const RationalComplex& c) const;
  WeightedJet mulPoly(const Poly& p) const;
  WeightedJet timesI() const;
  WeightedJet conj() const;

  /// Coordinate partial derivative (0 = x, 1 = y, 2 = t); the exponential
  /// factors differentiate by the product rule into the same weight set.
  WeightedJet partial(int var) const;

  QComplex evalQuad(QReal x, QReal y, QReal t) const;
  std::complex<double> evalDouble(double x, double y, double t) const;

  /// Same jet expressed over a larger background; slot[i] gives the position
  /// of this jet's factor i in the target background.
  WeightedJet rebased(BackgroundPtr target, const std::vector<std::size_t>& slot) const;

  std::string str() const;

 private:
  BackgroundPtr bg_;
  std::map<Weight, Poly> parts_;

  void insert(Weight w, Poly p);
  void prune();
  static void align(WeightedJet& a, WeightedJet& b);
};

}  // namespace torsionflow

#endif
