#include "torsionflow/variation.hpp"

#include <cmath>

namespace torsionflow {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> pairCov(const Eigen::Vector3cd& cov, const Eigen::Vector3cd& vec) {
  return cov.cwiseProduct(vec).sum();
}

bool flatBackground(const Structure& S) {
  return S.p.isZero() && S.q.isZero() && S.r.isZero() && S.A11.isZero() &&
         S.W.isZero();
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact-jet context.
// ---------------------------------------------------------------------------

CoframeVariation coframeVariation(const Structure& S, const JetDeformation& def) {
  CoframeVariation out;
  out.theta_coeff = d1bar(S, def.eta).timesI().scaled(2);  // 2iη¹ (raised by h₁₁̄ = 1)
  out.theta1_coeff = def.eta;
  out.theta1bar_coeff = -def.E11.conj().timesI();
  return out;
}

WeightedJet torsionVariation(const Structure& S, const JetDeformation& def) {
  const WeightedJet eta11b =
      covDeriv(S, covDeriv(S, scalarTensor(def.eta), Dir::Z1bar), Dir::Z1bar).value;
  const Tensor Ebar{def.E11.conj(),
                    {IndexClass::Lower1Bar, IndexClass::Lower1Bar}};
  const WeightedJet Ebar0 = covDeriv(S, Ebar, Dir::T).value;
  return -(eta11b.timesI() + def.eta * S.A11.conj()).scaled(2) - Ebar0.timesI();
}

ConnectionRicciVariation connectionRicciVariation(const Structure& S,
                                                  const JetDeformation& def) {
  const WeightedJet twoReAE =
      S.A11 * def.E11.conj() + S.A11.conj() * def.E11;
  const WeightedJet lapEta = sublaplacian(S, def.eta);
  const Tensor E{def.E11, {IndexClass::Lower1, IndexClass::Lower1}};
  const WeightedJet Eup = covDeriv(S, E, Dir::Z1bar).value;  // E₁₁,¹
  const Tensor Ebar{def.E11.conj(),
                    {IndexClass::Lower1Bar, IndexClass::Lower1Bar}};
  const WeightedJet Ebarup = covDeriv(S, Ebar, Dir::Z1).value;  // E₁̄₁̄,¹̄

  ConnectionRicciVariation out;
  out.theta_coeff = (twoReAE + lapEta).timesI();
  out.theta1_coeff = d1(S, def.eta).scaled(3) - Eup.timesI();
  const WeightedJet barBracket = d1bar(S, def.eta).scaled(3) + Ebarup.timesI();
  out.theta1bar_coeff = -barBracket;

  // The two brackets carry net slot classes 1 and 1̄; only the net class
  // enters the connection correction of the outer derivative.
  const Tensor b1{out.theta1_coeff, {IndexClass::Lower1}};
  const Tensor b1b{barBracket, {IndexClass::Lower1Bar}};
  out.ricci = -(twoReAE + lapEta) - (def.eta * S.W).scaled(2) -
              covDeriv(S, b1, Dir::Z1bar).value - covDeriv(S, b1b, Dir::Z1).value;
  return out;
}

WeightedJet websterVariation(const Structure& S, const JetDeformation& def) {
  const Tensor E{def.E11, {IndexClass::Lower1, IndexClass::Lower1}};
  const WeightedJet Eupup =
      covDeriv(S, covDeriv(S, E, Dir::Z1bar), Dir::Z1bar).value;  // E₁₁,¹¹
  const WeightedJet inner = Eupup.timesI() - S.A11 * def.E11.conj();
  return inner + inner.conj() - sublaplacian(S, def.eta).scaled(4) -
         (S.W * def.eta).scaled(2);
}

WeightedJet gaugeOperatorH(const Structure& S, const WeightedJet& E11,
                           const WeightedJet& h) {
  if (!flatBackground(S)) {
    throw UnsupportedBackground(
        "gauge operator is defined here on the flat background only");
  }
  const Tensor E{E11, {IndexClass::Lower1, IndexClass::Lower1}};
  return d1(S, h) + covDeriv(S, E, Dir::Z1bar).value.timesI();
}

LinearizedDeformation linearizationL(const Structure& S, const WeightedJet& E11,
                                     const WeightedJet& h) {
  if (!flatBackground(S)) {
    throw UnsupportedBackground(
        "highest-weight linearization is defined here on the flat background only");
  }
  LinearizedDeformation out;
  out.E_part = sublaplacian(S, E11).scaled(4);
  out.scalar_part = sublaplacian(S, h).scaled(10);
  return out;
}

// ---------------------------------------------------------------------------
// Homogeneous context.
// ---------------------------------------------------------------------------

HomogeneousCoframeVariation coframeVariation(const HomogeneousDeformation& def) {
  HomogeneousCoframeVariation out;
  out.theta_coeff = 0.0;  // η¹ = 0 for an invariant rate
  out.theta1_coeff = def.eta;
  out.theta1bar_coeff = -kI * std::conj(def.E11);
  return out;
}

std::complex<double> torsionVariation(const PseudohermitianGeometry& g,
                                      const HomogeneousDeformation& def) {
  // E₁̄₁̄,₀ = 2rĒ₁₁ from the two barred slots against ω₁¹(T) = r.
  return -2.0 * def.eta * std::conj(g.A11) - 2.0 * kI * g.r * std::conj(def.E11);
}

HomogeneousConnectionRicci connectionRicciVariation(
    const PseudohermitianGeometry& g, const HomogeneousDeformation& def) {
  const std::complex<double> E = def.E11;
  const std::complex<double> Eb = std::conj(E);
  const std::complex<double> twoReAE = g.A11 * Eb + std::conj(g.A11) * E;
  HomogeneousConnectionRicci out;
  out.theta_coeff = kI * twoReAE;
  out.theta1_coeff = 2.0 * kI * g.q * E;         // −i·E₁₁,¹ with E₁₁,¹ = −2qE
  out.theta1bar_coeff = -2.0 * kI * g.p * Eb;    // −i·E₁̄₁̄,¹̄ with E₁̄₁̄,¹̄ = 2pĒ
  // (3η₁ − iE₁₁,¹),₁̄ = −2iq²E and (3η₁̄ + iE₁̄₁̄,¹̄),₁ = 2ip²Ē for constants.
  const std::complex<double> ricci =
      -twoReAE - 2.0 * def.eta * g.W + 2.0 * kI * g.q * g.q * E -
      2.0 * kI * g.p * g.p * Eb;
  out.ricci = ricci.real();
  return out;
}

double websterVariation(const PseudohermitianGeometry& g,
                        const HomogeneousDeformation& def) {
  const std::complex<double> inner =
      2.0 * kI * g.q * g.q * def.E11 - g.A11 * std::conj(def.E11);
  return 2.0 * inner.real() - 2.0 * g.W * def.eta;
}

// ---------------------------------------------------------------------------
// Finite-difference harness.
// ---------------------------------------------------------------------------

FlowState familyPoint(const HomogeneousFamily& fam, double u) {
  try {
    const AdaptedCoframe cf = adaptedCoframe(su2Structure(fam.base));
    const Eigen::Matrix2d E = realEndomorphism(cf, fam.def.E11);
    FlowState st;
    st.J = retractJ(fam.base.J + 2.0 * u * E);
    st.s = fam.base.s * std::exp(2.0 * fam.def.eta * u);
    st.time = fam.base.time;
    return st;
  } catch (const std::exception& e) {
    throw FamilyEvaluationFailed(e.what());
  }
}

namespace {

/// Tangent of the family at parameter u0, expressed as a deformation in the
/// adapted frame of the family point there. The scale rate stays η; the
/// J-rate is half the closed-form derivative of the retracted chart path.
HomogeneousDeformation tangentAt(const HomogeneousFamily& fam, double u0,
                                 const AdaptedCoframe& cf_center) {
  const AdaptedCoframe cf_base = adaptedCoframe(su2Structure(fam.base));
  const Eigen::Matrix2d E0 = realEndomorphism(cf_base, fam.def.E11);
  const Eigen::Matrix2d M = fam.base.J + 2.0 * u0 * E0;
  const Eigen::Matrix2d N = M - 0.5 * M.trace() * Eigen::Matrix2d::Identity();
  const double det = N.determinant();
  if (!(det > 0.0)) {
    throw FamilyEvaluationFailed("family left the chart domain");
  }
  const Eigen::Matrix2d Np = 2.0 * E0 - E0.trace() * Eigen::Matrix2d::Identity();
  const double detRate = det * (N.inverse() * Np).trace();
  const double root = std::sqrt(det);
  const Eigen::Matrix2d Jrate = Np / root - N * (detRate / (2.0 * det * root));

  // ε = conj(θ¹(X e₁)) / θ¹(e₁) for the anticommuting endomorphism X.
  const Eigen::Matrix2d X = 0.5 * Jrate;
  Eigen::Vector3cd Xe1 = Eigen::Vector3cd::Zero();
  Xe1(0) = X(0, 0);
  Xe1(1) = X(1, 0);
  HomogeneousDeformation rate;
  rate.E11 = std::conj(pairCov(cf_center.theta1, Xe1)) / cf_center.theta1(0);
  rate.eta = fam.def.eta;
  return rate;
}

struct PrescribedSample {
  PseudohermitianGeometry geom;
  Eigen::Vector3cd theta1;
  double s;
};

/// Geometry of the family point u0+v read in the prescribed frame
/// V(v) = (1 − vη)Z₁ − ivεZ₁̄ (projected onto the moved J and
/// Levi-normalized by a real positive factor), whose tangent at v = 0
/// realizes the coframe gauge θ̇¹ = ηθ¹ − iĒθ¹̄ exactly.
PrescribedSample prescribedSample(const HomogeneousFamily& fam, double u0, double v,
                                  const AdaptedCoframe& cf0,
                                  const HomogeneousDeformation& rate) {
  const FlowState st = familyPoint(fam, u0 + v);
  Eigen::Vector3cd V =
      (1.0 - v * rate.eta) * cf0.Z1 - kI * v * rate.E11 * cf0.Z1.conjugate();
  Eigen::Vector3cd JV = Eigen::Vector3cd::Zero();
  JV(0) = st.J(0, 0) * V(0) + st.J(0, 1) * V(1);
  JV(1) = st.J(1, 0) * V(0) + st.J(1, 1) * V(1);
  Eigen::Vector3cd Z = 0.5 * (V - kI * JV);

  const LieAlgebra3 g = su2Algebra();
  const Eigen::Vector3cd br = g.bracket(Z, Eigen::Vector3cd(Z.conjugate()));
  const std::complex<double> dthetaZZb = -st.s * br(2);  // dθ(Z,Z̄) = −θ([Z,Z̄])
  const double levi = (-kI * dthetaZZb).real();
  if (!(levi > 0.0)) {
    throw FamilyEvaluationFailed("prescribed frame lost the Levi orientation");
  }
  Z /= std::sqrt(levi);

  AdaptedCoframe cf;
  cf.algebra = g;
  cf.theta = Eigen::Vector3d(0.0, 0.0, st.s);
  cf.T = Eigen::Vector3d(0.0, 0.0, 1.0 / st.s);
  cf.Z1 = Z;
  Eigen::Matrix3cd rows;
  rows.row(0) = Z.transpose();
  rows.row(1) = Z.conjugate().transpose();
  rows.row(2) = cf.T.cast<std::complex<double>>().transpose();
  const Eigen::Vector3cd rhs(1.0, 0.0, 0.0);
  cf.theta1 = rows.fullPivLu().solve(rhs);
  if ((rows * cf.theta1 - rhs).norm() > 1e-10) {
    throw FamilyEvaluationFailed("prescribed coframe duality solve failed");
  }

  PrescribedSample out;
  out.geom = solveStructureEquations(cf);
  out.theta1 = cf.theta1;
  out.s = st.s;
  return out;
}

std::complex<double> sampleQuantity(const HomogeneousFamily& fam, double u0,
                                    double v, const AdaptedCoframe& cf0,
                                    const HomogeneousDeformation& rate,
                                    VariationFormula formula) {
  const PrescribedSample smp = prescribedSample(fam, u0, v, cf0, rate);
  switch (formula) {
    case VariationFormula::TorsionBar:
      return std::conj(smp.geom.A11);
    case VariationFormula::Ricci:
    case VariationFormula::Webster:
      return smp.geom.W;
    case VariationFormula::ConnectionTheta:
    case VariationFormula::ConnectionTheta1:
    case VariationFormula::ConnectionTheta1Bar: {
      // ω₁¹(v) as a covector, evaluated on the fixed center frame.
      Eigen::Vector3cd theta_cov(0.0, 0.0, smp.s);
      Eigen::Vector3cd omega = smp.geom.p * smp.theta1 +
                               smp.geom.q * smp.theta1.conjugate() +
                               smp.geom.r * theta_cov;
      if (formula == VariationFormula::ConnectionTheta) {
        return pairCov(omega, cf0.T.cast<std::complex<double>>());
      }
      if (formula == VariationFormula::ConnectionTheta1) {
        return pairCov(omega, cf0.Z1);
      }
      return pairCov(omega, Eigen::Vector3cd(cf0.Z1.conjugate()));
    }
  }
  throw FamilyEvaluationFailed("unknown variation formula");
}

std::complex<double> analyticValue(const PseudohermitianGeometry& g,
                                   const HomogeneousDeformation& rate,
                                   VariationFormula formula) {
  switch (formula) {
    case VariationFormula::TorsionBar:
      return torsionVariation(g, rate);
    case VariationFormula::Ricci:
      return connectionRicciVariation(g, rate).ricci;
    case VariationFormula::Webster:
      return websterVariation(g, rate);
    case VariationFormula::ConnectionTheta:
      return connectionRicciVariation(g, rate).theta_coeff;
    case VariationFormula::ConnectionTheta1:
      return connectionRicciVariation(g, rate).theta1_coeff;
    case VariationFormula::ConnectionTheta1Bar:
      return connectionRicciVariation(g, rate).theta1bar_coeff;
  }
  throw FamilyEvaluationFailed("unknown variation formula");
}

}  // namespace

VariationReport fdVerify(const HomogeneousFamily& fam, VariationFormula formula,
                         double u0, double eps) {
  if (!(eps > 0.0) || eps > 0.1) {
    throw std::invalid_argument("finite-difference step must lie in (0, 0.1]");
  }
  try {
    const FlowState center = familyPoint(fam, u0);
    const AdaptedCoframe cf0 = adaptedCoframe(su2Structure(center));
    const PseudohermitianGeometry g0 = solveStructureEquations(cf0);
    const HomogeneousDeformation rate = tangentAt(fam, u0, cf0);

    const auto centered = [&](double h) {
      const std::complex<double> plus = sampleQuantity(fam, u0, +h, cf0, rate, formula);
      const std::complex<double> minus = sampleQuantity(fam, u0, -h, cf0, rate, formula);
      return (plus - minus) / (2.0 * h);
    };

    VariationReport rep;
    rep.analytic = analyticValue(g0, rate, formula);
    rep.finite_difference = centered(eps);
    rep.abs_error = std::abs(rep.finite_difference - rep.analytic);
    const double half_error = std::abs(centered(eps / 2.0) - rep.analytic);
    rep.richardson_ratio = half_error > 0.0 ? rep.abs_error / half_error : 4.0;
    return rep;
  } catch (const FamilyEvaluationFailed&) {
    throw;
  } catch (const std::exception& e) {
    throw FamilyEvaluationFailed(e.what());
  }
}

}  // namespace torsionflow
