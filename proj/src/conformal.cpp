#include "torsionflow/conformal.hpp"

#include "torsionflow/oracle.hpp"

namespace torsionflow {

ConformalChange makeChange(Poly f) {
  ConformalChange c;
  c.bg = makeBackground({f});
  c.f = std::move(f);
  c.dir = {1};
  return c;
}

ConformalChange changeAt(BackgroundPtr bg, std::size_t slot) {
  if (slot >= bg->size())
    throw std::out_of_range("conformal factor slot exceeds background size");
  ConformalChange c;
  c.f = bg->factor(slot);
  c.dir = Weight(bg->size(), 0);
  c.dir[slot] = 1;
  c.bg = std::move(bg);
  return c;
}

ConformalChange combinedChange(BackgroundPtr bg, Weight dir) {
  ConformalChange c;
  for (std::size_t i = 0; i < dir.size(); ++i)
    if (dir[i] != 0) c.f += bg->factor(i).scaled(RationalComplex(dir[i]));
  c.dir = std::move(dir);
  c.bg = std::move(bg);
  return c;
}

WeightedJet expOf(const ConformalChange& c, int k) {
  Weight w(c.dir.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = k * c.dir[i];
  return WeightedJet::expTerm(c.bg, std::move(w), Poly::constant(RationalComplex(1)));
}

Structure hatStructure(const Structure& base, const ConformalChange& c) {
  const WeightedJet fj(c.bg, c.f);
  const WeightedJet f1 = d1(base, fj);
  const WeightedJet f1b = d1bar(base, fj);  // f¹
  const WeightedJet f11 =
      covDeriv(base, Tensor{f1, {IndexClass::Lower1}}, Dir::Z1).value;
  const WeightedJet lapf = sublaplacian(base, fj);
  const WeightedJet e1 = expOf(c, 1), e2 = expOf(c, 2);
  const WeightedJet em1 = expOf(c, -1), em2 = expOf(c, -2);

  Structure h;
  h.Z1 = scaleVec(em1, base.Z1);
  h.Z1bar = scaleVec(em1, base.Z1bar);
  h.Reeb = addVec(scaleVec(em2, base.Reeb),
                  addVec(scaleVec((f1 * em2).timesI().scaled(2), base.Z1bar),
                         scaleVec((f1b * em2).timesI().scaled(-2), base.Z1)));

  h.A11 = em2 * (base.A11 + f11.timesI().scaled(2) - (f1 * f1).timesI().scaled(4));
  h.W = em2 * (base.W - lapf.scaled(4) - (f1 * f1b).scaled(8));

  // ω̂₁¹ = ω₁¹ + 3(f₁θ¹ − f¹θ¹̄) + i(Δ_bf + 8f₁f¹)θ in the base coframe,
  // then converted to the rescaled coframe. The θ-coefficient is forced by
  // the structure equation dθ̂¹ = θ̂¹∧ω̂₁¹ + θ̂∧τ̂¹ together with (31).
  const WeightedJet P = base.p + f1.scaled(3);
  const WeightedJet Q = base.q - f1b.scaled(3);
  const WeightedJet R = base.r + (lapf + (f1 * f1b).scaled(8)).timesI();
  h.p = em1 * P;
  h.q = em1 * Q;
  h.r = em2 * (R - (f1b * P).timesI().scaled(2) + (f1 * Q).timesI().scaled(2));

  for (int i = 0; i < 3; ++i) {
    h.theta[i] = e2 * base.theta[i];
    h.theta1[i] = e1 * (base.theta1[i] + (f1b * base.theta[i]).timesI().scaled(2));
  }
  return h;
}

namespace {

/// W₁ − iA₁₁,¹ of a structure; the combination whose rescale law is exact.
WeightedJet leeCombination(const Structure& S) {
  Tensor a{S.A11, {IndexClass::Lower1, IndexClass::Lower1}};
  WeightedJet div = covDeriv(S, a, Dir::Z1bar).value;
  return d1(S, S.W) - div.timesI();
}

/// X,¹ of a combination carrying one effective lower-1 slot.
WeightedJet divLower1(const Structure& S, const WeightedJet& x) {
  return covDeriv(S, Tensor{x, {IndexClass::Lower1}}, Dir::Z1bar).value;
}

}  // namespace

double maxAbsOnGrid(const WeightedJet& j) {
  QReal worst = 0;
  for (const auto& pt : oracle::samplePoints()) {
    QReal v = j.evalQuad(pt[0], pt[1], pt[2]).abs();
    if (v > worst) worst = v;
  }
  return static_cast<double>(worst);
}

IdentityResidualReport identityResidual(IdentityId id, const ConformalChange& change) {
  const Structure base = flatStructure();
  const Structure hat = hatStructure(base, change);
  const WeightedJet fj(change.bg, change.f);

  WeightedJet residual;
  switch (id) {
    case IdentityId::LEE_33:
      residual = leeCombination(hat) -
                 expOf(change, -3) * (leeCombination(base) - paneitzP1(base, fj).scaled(6));
      break;
    case IdentityId::LEE_331:
      residual = divLower1(hat, leeCombination(hat)) -
                 expOf(change, -4) * (divLower1(base, leeCombination(base)) -
                                      paneitzP0(base, fj).scaled(6));
      break;
    case IdentityId::PANEITZ_33B:
      residual = paneitzP1(hat, fj) - expOf(change, -3) * paneitzP1(base, fj);
      break;
    case IdentityId::PANEITZ_P0_COV:
      residual = paneitzP0(hat, fj) - expOf(change, -4) * paneitzP0(base, fj);
      break;
    case IdentityId::GAUGE_BIANCHI: {
      if (!isPluriharmonic(change.f))
        throw PreconditionViolated(
            "gauge identity requires a pluriharmonic conformal factor");
      // η₁ + iF₁¹̄,₁̄ with (F, η) = (Â, −Ŵ); F₁¹̄ carries two effective
      // lower-1 slots and ,₁̄ is the Z₁̄ direction.
      Tensor f11bar{hat.A11, {IndexClass::Lower1, IndexClass::Lower1}};
      residual = -d1(hat, hat.W) + covDeriv(hat, f11bar, Dir::Z1bar).value.timesI();
      break;
    }
    case IdentityId::BIANCHI_W0:
      residual = bianchiResidual(hat);
      break;
  }

  IdentityResidualReport rep;
  rep.is_zero = residual.isZero();
  rep.max_abs = maxAbsOnGrid(residual);
  rep.residual = std::move(residual);
  return rep;
}

bool isPluriharmonic(const Poly& g) {
  return paneitzP1(flatStructure(), WeightedJet(g)).isZero();
}

}  // namespace torsionflow
