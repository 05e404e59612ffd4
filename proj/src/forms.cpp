#include "torsionflow/forms.hpp"

namespace torsionflow {

Form1 operator+(const Form1& a, const Form1& b) {
  return {a.cx + b.cx, a.cy + b.cy, a.ct + b.ct};
}

Form1 operator-(const Form1& a, const Form1& b) {
  return {a.cx - b.cx, a.cy - b.cy, a.ct - b.ct};
}

Form2 operator+(const Form2& a, const Form2& b) {
  return {a.cxy + b.cxy, a.cxt + b.cxt, a.cyt + b.cyt};
}

Form2 operator-(const Form2& a, const Form2& b) {
  return {a.cxy - b.cxy, a.cxt - b.cxt, a.cyt - b.cyt};
}

Form1 scale(const WeightedJet& c, const Form1& a) {
  return {c * a.cx, c * a.cy, c * a.ct};
}

Form2 scale(const WeightedJet& c, const Form2& a) {
  return {c * a.cxy, c * a.cxt, c * a.cyt};
}

Form1 timesI(const Form1& a) {
  return {a.cx.timesI(), a.cy.timesI(), a.ct.timesI()};
}

Form2 timesI(const Form2& a) {
  return {a.cxy.timesI(), a.cxt.timesI(), a.cyt.timesI()};
}

Form1 conjForm(const Form1& a) {
  return {a.cx.conj(), a.cy.conj(), a.ct.conj()};
}

Form2 exteriorD(const Form1& a) {
  return {a.cy.partial(0) - a.cx.partial(1),
          a.ct.partial(0) - a.cx.partial(2),
          a.ct.partial(1) - a.cy.partial(2)};
}

Form2 wedge(const Form1& a, const Form1& b) {
  return {a.cx * b.cy - a.cy * b.cx,
          a.cx * b.ct - a.ct * b.cx,
          a.cy * b.ct - a.ct * b.cy};
}

Form1 thetaForm(const Structure& S) {
  return {S.theta[0], S.theta[1], S.theta[2]};
}

Form1 theta1Form(const Structure& S) {
  return {S.theta1[0], S.theta1[1], S.theta1[2]};
}

Form1 connectionForm(const Structure& S) {
  Form1 t1 = theta1Form(S);
  return scale(S.p, t1) + scale(S.q, conjForm(t1)) + scale(S.r, thetaForm(S));
}

Form2 contactStructureResidual(const Structure& S) {
  Form1 t1 = theta1Form(S);
  return exteriorD(thetaForm(S)) - timesI(wedge(t1, conjForm(t1)));
}

Form2 coframeStructureResidual(const Structure& S) {
  Form1 t1 = theta1Form(S);
  Form1 tau1 = scale(S.A11.conj(), conjForm(t1));
  return exteriorD(t1) - wedge(t1, connectionForm(S)) - wedge(thetaForm(S), tau1);
}

Form2 curvatureStructureResidual(const Structure& S) {
  Form1 th = thetaForm(S);
  Form1 t1 = theta1Form(S);
  WeightedJet a11up1 =
      covDeriv(S, Tensor{S.A11, {IndexClass::Lower1, IndexClass::Lower1}},
               Dir::Z1bar)
          .value;
  Form2 rhs = scale(S.W, wedge(t1, conjForm(t1))) +
              scale(a11up1, wedge(t1, th)) -
              scale(a11up1.conj(), wedge(conjForm(t1), th));
  return exteriorD(connectionForm(S)) - rhs;
}

bool structureEquationsHold(const Structure& S) {
  return contactStructureResidual(S).isZero() &&
         coframeStructureResidual(S).isZero() &&
         curvatureStructureResidual(S).isZero();
}

}  // namespace torsionflow
