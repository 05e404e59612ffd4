#include "torsionflow/structure.hpp"

namespace torsionflow {

namespace hg = heisenberg;

WeightedJet apply(const FrameVec& v, const WeightedJet& j) {
  return v.cZ1 * hg::dZ1(j) + v.cZ1bar * hg::dZ1bar(j) + v.cT * hg::dT(j);
}

FrameVec addVec(const FrameVec& a, const FrameVec& b) {
  return {a.cZ1 + b.cZ1, a.cZ1bar + b.cZ1bar, a.cT + b.cT};
}

FrameVec scaleVec(const WeightedJet& c, const FrameVec& v) {
  return {c * v.cZ1, c * v.cZ1bar, c * v.cT};
}

const FrameVec& Structure::frame(Dir d) const {
  switch (d) {
    case Dir::Z1: return Z1;
    case Dir::Z1bar: return Z1bar;
    default: return Reeb;
  }
}

const WeightedJet& Structure::conn(Dir d) const {
  switch (d) {
    case Dir::Z1: return p;
    case Dir::Z1bar: return q;
    default: return r;
  }
}

Structure flatStructure() {
  Structure s;
  const WeightedJet one{Poly::constant(RationalComplex(1))};
  s.Z1 = {one, {}, {}};
  s.Z1bar = {{}, one, {}};
  s.Reeb = {{}, {}, one};
  auto th = hg::thetaComponents();
  auto th1 = hg::theta1Components();
  for (int i = 0; i < 3; ++i) {
    s.theta[i] = WeightedJet(th[i]);
    s.theta1[i] = WeightedJet(th1[i]);
  }
  return s;
}

Tensor scalarTensor(WeightedJet v) { return {std::move(v), {}}; }

IndexClass classOf(Dir d) {
  switch (d) {
    case Dir::Z1: return IndexClass::Lower1;
    case Dir::Z1bar: return IndexClass::Lower1Bar;
    default: return IndexClass::Zero;
  }
}

Tensor covDeriv(const Structure& S, const Tensor& u, Dir d) {
  WeightedJet v = apply(S.frame(d), u.value);
  // ∇Z₁ = ω₁¹ ⊗ Z₁ and ω₁̄¹̄ = −ω₁¹, so every Lower1 slot contributes
  // −ω₁¹(e_d) and every Lower1Bar slot +ω₁¹(e_d); the Reeb vector field is
  // parallel. Contracted slot pairs cancel automatically.
  int net = 0;
  for (IndexClass ic : u.indices) {
    if (ic == IndexClass::Lower1) --net;
    else if (ic == IndexClass::Lower1Bar) ++net;
  }
  if (net != 0) v += (S.conn(d) * u.value).scaled(RationalComplex(net));
  Tensor out{std::move(v), u.indices};
  out.indices.push_back(classOf(d));
  return out;
}

WeightedJet d1(const Structure& S, const WeightedJet& phi) {
  return apply(S.Z1, phi);
}
WeightedJet d1bar(const Structure& S, const WeightedJet& phi) {
  return apply(S.Z1bar, phi);
}
WeightedJet d0(const Structure& S, const WeightedJet& phi) {
  return apply(S.Reeb, phi);
}

WeightedJet sublaplacian(const Structure& S, const WeightedJet& phi) {
  Tensor a = covDeriv(S, covDeriv(S, scalarTensor(phi), Dir::Z1), Dir::Z1bar);
  Tensor b = covDeriv(S, covDeriv(S, scalarTensor(phi), Dir::Z1bar), Dir::Z1);
  return a.value + b.value;
}

WeightedJet paneitzP1(const Structure& S, const WeightedJet& phi) {
  Tensor u = covDeriv(S, scalarTensor(phi), Dir::Z1bar);  // φ₁̄
  u = covDeriv(S, u, Dir::Z1);                            // φ₁̄¹̄
  u = covDeriv(S, u, Dir::Z1);                            // φ₁̄¹̄₁
  return u.value + (S.A11 * d1bar(S, phi)).timesI();      // + iA₁₁φ¹
}

WeightedJet paneitzP1bar(const Structure& S, const WeightedJet& phi) {
  return paneitzP1(S, phi.conj()).conj();
}

WeightedJet paneitzP0(const Structure& S, const WeightedJet& phi) {
  Tensor sig{paneitzP1(S, phi), {IndexClass::Lower1}};
  Tensor sigBar{paneitzP1bar(S, phi), {IndexClass::Lower1Bar}};
  WeightedJet div = covDeriv(S, sig, Dir::Z1bar).value;     // (P₁φ),¹
  WeightedJet divBar = covDeriv(S, sigBar, Dir::Z1).value;  // (P₁̄φ),¹̄
  return (div + divBar).scaled(rat(1, 2));
}

WeightedJet paneitzP0Factored(const Structure& S, const WeightedJet& phi) {
  WeightedJet lap2 = sublaplacian(S, sublaplacian(S, phi));
  WeightedJet t2 = d0(S, d0(S, phi));
  // Torsion part 2i[(A₁₁φ¹),¹ − (A₁̄₁̄φ₁),₁]; each α-contracted product
  // keeps one net slot. For real φ this is −4Re(i(A₁̄₁̄φ₁),₁).
  Tensor up{S.A11 * d1bar(S, phi), {IndexClass::Lower1}};
  Tensor dn{S.A11.conj() * d1(S, phi), {IndexClass::Lower1Bar}};
  WeightedJet torsion = (covDeriv(S, up, Dir::Z1bar).value -
                         covDeriv(S, dn, Dir::Z1).value).timesI().scaled(2);
  return (lap2 + t2 + torsion).scaled(rat(1, 4));
}

WeightedJet follandStein(const Structure& S, const Rational& alpha,
                         const WeightedJet& phi) {
  return sublaplacian(S, phi) -
         d0(S, phi).timesI().scaled(RationalComplex(alpha));
}

WeightedJet commutationMixedResidual(const Structure& S, const WeightedJet& phi) {
  WeightedJet a = covDeriv(S, covDeriv(S, scalarTensor(phi), Dir::Z1), Dir::Z1bar).value;
  WeightedJet b = covDeriv(S, covDeriv(S, scalarTensor(phi), Dir::Z1bar), Dir::Z1).value;
  return a - b - d0(S, phi).timesI();
}

WeightedJet commutationReebResidual(const Structure& S, const WeightedJet& phi) {
  WeightedJet a = covDeriv(S, covDeriv(S, scalarTensor(phi), Dir::T), Dir::Z1).value;
  WeightedJet b = covDeriv(S, covDeriv(S, scalarTensor(phi), Dir::Z1), Dir::T).value;
  return a - b - S.A11 * d1bar(S, phi);
}

WeightedJet bianchiResidual(const Structure& S) {
  Tensor a{S.A11, {IndexClass::Lower1, IndexClass::Lower1}};
  a = covDeriv(S, a, Dir::Z1bar);  // A₁₁,¹
  a = covDeriv(S, a, Dir::Z1bar);  // A₁₁,¹¹
  return d0(S, S.W) - (a.value + a.value.conj());
}

}  // namespace torsionflow
