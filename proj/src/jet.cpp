#include "torsionflow/jet.hpp"

#include <sstream>
#include <stdexcept>

namespace torsionflow {

Background::Background(std::vector<Poly> factors) : factors_(std::move(factors)) {
  for (const Poly& f : factors_)
    if (!f.isReal())
      throw std::invalid_argument("background log-factor must be real-valued");
}

BackgroundPtr emptyBackground() {
  static const BackgroundPtr empty = std::make_shared<Background>();
  return empty;
}

BackgroundPtr makeBackground(std::vector<Poly> factors) {
  return std::make_shared<Background>(std::move(factors));
}

WeightedJet::WeightedJet(Poly p) : bg_(emptyBackground()) {
  insert(Weight{}, std::move(p));
}

WeightedJet::WeightedJet(BackgroundPtr bg, Poly p) : bg_(std::move(bg)) {
  insert(Weight(bg_->size(), 0), std::move(p));
}

WeightedJet WeightedJet::expTerm(BackgroundPtr bg, Weight w, Poly p) {
  if (w.size() != bg->size())
    throw std::invalid_argument("weight length does not match background");
  WeightedJet j;
  j.bg_ = std::move(bg);
  j.insert(std::move(w), std::move(p));
  return j;
}

void WeightedJet::insert(Weight w, Poly p) {
  if (p.isZero()) return;
  auto it = parts_.find(w);
  if (it == parts_.end()) {
    parts_.emplace(std::move(w), std::move(p));
  } else {
    it->second += p;
    if (it->second.isZero()) parts_.erase(it);
  }
}

void WeightedJet::prune() {
  for (auto it = parts_.begin(); it != parts_.end();) {
    if (it->second.isZero())
      it = parts_.erase(it);
    else
      ++it;
  }
}

bool WeightedJet::isReal() const {
  for (const auto& [w, p] : parts_)
    if (!p.isReal()) return false;
  return true;
}

// Brings two jets onto a common background: identical pointers or identical
// content are accepted as-is, and the trivial (empty) background promotes
// into the other one at weight zero.
void WeightedJet::align(WeightedJet& a, WeightedJet& b) {
  if (a.bg_ == b.bg_ || a.bg_->sameContent(*b.bg_)) {
    b.bg_ = a.bg_;
    return;
  }
  // An empty-background jet has at most one part, at the empty weight; it
  // lifts into any background at weight zero.
  auto promote = [](WeightedJet& from, const BackgroundPtr& to) {
    WeightedJet out;
    out.bg_ = to;
    for (auto& [w, p] : from.parts_) out.insert(Weight(to->size(), 0), std::move(p));
    from = std::move(out);
  };
  if (a.bg_->size() == 0) {
    promote(a, b.bg_);
    return;
  }
  if (b.bg_->size() == 0) {
    promote(b, a.bg_);
    return;
  }
  throw std::invalid_argument("weighted jets live over incompatible backgrounds");
}

WeightedJet WeightedJet::operator-() const {
  WeightedJet r = *this;
  for (auto& [w, p] : r.parts_) p = -p;
  return r;
}

WeightedJet& WeightedJet::operator+=(const WeightedJet& o) {
  WeightedJet a = std::move(*this);
  WeightedJet b = o;
  align(a, b);
  for (auto& [w, p] : b.parts_) a.insert(w, std::move(p));
  *this = std::move(a);
  return *this;
}

WeightedJet& WeightedJet::operator-=(const WeightedJet& o) { return *this += -o; }

WeightedJet operator+(const WeightedJet& a, const WeightedJet& b) {
  WeightedJet r = a;
  r += b;
  return r;
}

WeightedJet operator-(const WeightedJet& a, const WeightedJet& b) {
  WeightedJet r = a;
  r -= b;
  return r;
}

WeightedJet operator*(const WeightedJet& a, const WeightedJet& b) {
  WeightedJet x = a;
  WeightedJet y = b;
  WeightedJet::align(x, y);
  WeightedJet r;
  r.bg_ = x.bg_;
  for (const auto& [wa, pa] : x.parts_) {
    for (const auto& [wb, pb] : y.parts_) {
      Weight w = wa;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
      r.insert(std::move(w), pa * pb);
    }
  }
  return r;
}

bool operator==(const WeightedJet& a, const WeightedJet& b) {
  WeightedJet x = a;
  WeightedJet y = b;
  WeightedJet::align(x, y);
  return x.parts_ == y.parts_;
}

WeightedJet WeightedJet::scaled(const RationalComplex& c) const {
  WeightedJet r;
  r.bg_ = bg_;
  if (c.isZero()) return r;
  for (const auto& [w, p] : parts_) r.parts_.emplace(w, p.scaled(c));
  return r;
}

WeightedJet WeightedJet::mulPoly(const Poly& p) const {
  WeightedJet r;
  r.bg_ = bg_;
  for (const auto& [w, q] : parts_) r.insert(w, q * p);
  return r;
}

WeightedJet WeightedJet::timesI() const {
  WeightedJet r;
  r.bg_ = bg_;
  for (const auto& [w, p] : parts_) r.parts_.emplace(w, p.timesI());
  return r;
}

WeightedJet WeightedJet::conj() const {
  // Background factors are real, so conjugation acts on parts only.
  WeightedJet r;
  r.bg_ = bg_;
  for (const auto& [w, p] : parts_) r.parts_.emplace(w, p.conj());
  return r;
}

WeightedJet WeightedJet::partial(int var) const {
  WeightedJet r;
  r.bg_ = bg_;
  for (const auto& [w, p] : parts_) {
    Poly chain;  // (Σ_i k_i ∂f_i) p + ∂p
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0) continue;
      chain += bg_->factor(i).derivative(var).scaled(RationalComplex(w[i]));
    }
    r.insert(w, chain * p + p.derivative(var));
  }
  return r;
}

QComplex WeightedJet::evalQuad(QReal x, QReal y, QReal t) const {
  QComplex acc;
  for (const auto& [w, p] : parts_) {
    QReal phase = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0) continue;
      QComplex fval = torsionflow::evalQuad(bg_->factor(i), x, y, t);
      phase += QReal(w[i]) * fval.re;  // factors are real
    }
    acc += expq(phase) * torsionflow::evalQuad(p, x, y, t);
  }
  return acc;
}

std::complex<double> WeightedJet::evalDouble(double x, double y, double t) const {
  QComplex v = evalQuad(x, y, t);
  return {static_cast<double>(v.re), static_cast<double>(v.im)};
}

WeightedJet WeightedJet::rebased(BackgroundPtr target,
                                 const std::vector<std::size_t>& slot) const {
  if (slot.size() != bg_->size())
    throw std::invalid_argument("rebase slot map length mismatch");
  for (std::size_t i = 0; i < slot.size(); ++i) {
    if (slot[i] >= target->size() ||
        !(target->factor(slot[i]) == bg_->factor(i)))
      throw std::invalid_argument("rebase target factor mismatch");
  }
  WeightedJet r;
  r.bg_ = std::move(target);
  for (const auto& [w, p] : parts_) {
    Weight nw(r.bg_->size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) nw[slot[i]] += w[i];
    r.insert(std::move(nw), p);
  }
  return r;
}

std::string WeightedJet::str() const {
  if (parts_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, p] : parts_) {
    if (!first) os << "  +  ";
    first = false;
    bool flat = true;
    for (int k : w) flat = flat && k == 0;
    if (!flat) {
      os << "exp(";
      bool inner = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        if (!inner) os << " + ";
        inner = false;
        os << w[i] << "*f" << i;
      }
      os << ") * ";
    }
    os << "[" << p.str() << "]";
  }
  return os.str();
}

}  // namespace torsionflow
