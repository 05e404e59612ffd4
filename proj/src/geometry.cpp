#include "torsionflow/geometry.hpp"

#include <cmath>

namespace torsionflow {

namespace {

using Cx = std::complex<double>;

/// dθ as a matrix B(i,j) = dθ(e_i, e_j) = −θ([e_i, e_j]).
Eigen::Matrix3d dthetaMatrix(const LieAlgebra3& g, const Eigen::Vector3d& theta) {
  Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
  for (int k = 0; k < 3; ++k) B -= theta(k) * g.c[k];
  return B;
}

Cx evalTwoForm(const Eigen::Matrix3cd& B, const Eigen::Vector3cd& u,
               const Eigen::Vector3cd& v) {
  return u.transpose() * B * v;
}

/// Σ cov_i vec_i, the bilinear (unconjugated) pairing.
Cx pair1(const Eigen::Vector3cd& cov, const Eigen::Vector3cd& vec) {
  return cov.cwiseProduct(vec).sum();
}

/// (α∧β)(u,v) for 1-forms.
Cx wedgeEval(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b,
             const Eigen::Vector3cd& u, const Eigen::Vector3cd& v) {
  return pair1(a, u) * pair1(b, v) - pair1(a, v) * pair1(b, u);
}

}  // namespace

double contactVolume(const LieAlgebra3& g, const Eigen::Vector3d& theta) {
  Eigen::Matrix3d B = dthetaMatrix(g, theta);
  return std::abs(theta(0) * B(1, 2) - theta(1) * B(0, 2) + theta(2) * B(0, 1));
}

Eigen::Vector3d reebVector(const LieAlgebra3& g, const Eigen::Vector3d& theta) {
  Eigen::Matrix3d B = dthetaMatrix(g, theta);
  Eigen::Matrix<double, 4, 3> M;
  M.row(0) = theta.transpose();
  M.bottomRows<3>() = B;
  Eigen::Vector4d rhs(1.0, 0.0, 0.0, 0.0);
  Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 4, 3>> qr(M);
  if (qr.rank() < 3)
    throw DegenerateContact("theta wedge dtheta vanishes; no Reeb field");
  Eigen::Vector3d T = qr.solve(rhs);
  double scale = std::max(1.0, theta.cwiseAbs().maxCoeff());
  if ((M * T - rhs).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DegenerateContact("Reeb system inconsistent; theta is not contact");
  return T;
}

AdaptedCoframe adaptedCoframe(const LeftInvariantStructure& S) {
  double tscale = S.theta.cwiseAbs().maxCoeff();
  if (std::abs(S.theta(0)) > 1e-12 * tscale || std::abs(S.theta(1)) > 1e-12 * tscale)
    throw NonCompatibleJ("J is declared on span(e1,e2), which must be ker theta");
  Eigen::Matrix2d jsq = S.J * S.J + Eigen::Matrix2d::Identity();
  if (jsq.cwiseAbs().maxCoeff() > 1e-10)
    throw NonCompatibleJ("J*J != -I on the contact plane");

  AdaptedCoframe cf;
  cf.algebra = S.algebra;
  cf.theta = S.theta;
  cf.T = reebVector(S.algebra, S.theta);

  // Z1 ∝ X − iJX with X = e1: the +i eigenvector of J.
  Eigen::Vector2cd zp = Eigen::Vector2cd(1.0, 0.0) -
                        Cx(0, 1) * (S.J * Eigen::Vector2d(1.0, 0.0)).cast<Cx>();
  Eigen::Vector3cd Zp(zp(0), zp(1), 0.0);
  Eigen::Matrix3cd Bc = dthetaMatrix(S.algebra, S.theta).cast<Cx>();
  Cx levi = evalTwoForm(Bc, Zp, Zp.conjugate());
  if (levi.imag() <= 1e-14)
    throw NonCompatibleJ("Levi form is not positive for this J");
  cf.Z1 = Zp / std::sqrt(levi.imag());

  // theta1: the covector dual to Z1 (annihilating Z1bar and T).
  Eigen::Matrix3cd M;
  M.col(0) = cf.Z1;
  M.col(1) = cf.Z1.conjugate();
  M.col(2) = cf.T.cast<Cx>();
  Eigen::ColPivHouseholderQR<Eigen::Matrix3cd> qr(M.transpose());
  if (qr.rank() < 3)
    throw DegenerateContact("frame (Z1, Z1bar, T) is not a basis");
  cf.theta1 = qr.solve(Eigen::Vector3cd(1.0, 0.0, 0.0));
  return cf;
}

double coframeResidual(const AdaptedCoframe& cf) {
  Eigen::Matrix3cd Bc = dthetaMatrix(cf.algebra, cf.theta).cast<Cx>();
  Eigen::Vector3cd thc = cf.theta.cast<Cx>();
  Eigen::Vector3cd Tc = cf.T.cast<Cx>();
  double res = 0.0;
  auto acc = [&res](Cx v) { res = std::max(res, std::abs(v)); };
  acc(pair1(cf.theta1, cf.Z1) - 1.0);
  acc(pair1(cf.theta1, cf.Z1.conjugate()));
  acc(pair1(cf.theta1, Tc));
  acc(pair1(thc, cf.Z1));
  acc(pair1(thc, Tc) - 1.0);
  for (int i = 0; i < 3; ++i)
    acc(evalTwoForm(Bc, Tc, Eigen::Vector3cd::Unit(i)));
  // dθ = iθ¹∧θ¹̄ on all basis pairs
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Eigen::Vector3cd u = Eigen::Vector3cd::Unit(i), v = Eigen::Vector3cd::Unit(j);
      acc(evalTwoForm(Bc, u, v) -
          Cx(0, 1) * wedgeEval(cf.theta1, cf.theta1.conjugate(), u, v));
    }
  return res;
}

PseudohermitianGeometry solveStructureEquations(const AdaptedCoframe& cf) {
  Eigen::Vector3cd thc = cf.theta.cast<Cx>();
  Eigen::Vector3cd Tc = cf.T.cast<Cx>();
  Eigen::Matrix3cd P;
  Eigen::Matrix3cd frame;
  frame.col(0) = cf.Z1;
  frame.col(1) = cf.Z1.conjugate();
  frame.col(2) = Tc;
  P.row(0) = cf.theta1.transpose() * frame;
  P.row(1) = cf.theta1.conjugate().transpose() * frame;
  P.row(2) = thc.transpose() * frame;
  if ((P - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() > 1e-8)
    throw SingularSystem("coframe is not dual to the adapted frame");

  auto dtheta1 = [&cf](const Eigen::Vector3cd& u, const Eigen::Vector3cd& v) {
    return -pair1(cf.theta1, cf.algebra.bracket(u, v));
  };
  PseudohermitianGeometry g;
  g.q = dtheta1(cf.Z1, cf.Z1.conjugate());
  g.r = dtheta1(cf.Z1, Tc);
  g.A11 = -std::conj(dtheta1(cf.Z1.conjugate(), Tc));
  g.p = -std::conj(g.q);

  Eigen::Vector3cd omega =
      g.p * cf.theta1 + g.q * cf.theta1.conjugate() + g.r * thc;
  Cx w = -pair1(omega, cf.algebra.bracket(cf.Z1, cf.Z1.conjugate()));
  g.W = w.real();
  g.ricci = g.W;
  return g;
}

double structureEquationResidual(const AdaptedCoframe& cf,
                                 const PseudohermitianGeometry& geom) {
  Eigen::Vector3cd thc = cf.theta.cast<Cx>();
  Eigen::Vector3cd Tc = cf.T.cast<Cx>();
  Eigen::Vector3cd omega =
      geom.p * cf.theta1 + geom.q * cf.theta1.conjugate() + geom.r * thc;
  Eigen::Vector3cd tau1 = std::conj(geom.A11) * cf.theta1.conjugate();
  double res = std::abs(geom.r + std::conj(geom.r));  // ω₁¹ + ω₁̄¹̄ = 0
  auto dtheta1 = [&cf](const Eigen::Vector3cd& u, const Eigen::Vector3cd& v) {
    return -pair1(cf.theta1, cf.algebra.bracket(u, v));
  };
  const Eigen::Vector3cd pairs[3][2] = {{cf.Z1, cf.Z1.conjugate()},
                                        {cf.Z1, Tc},
                                        {cf.Z1.conjugate(), Tc}};
  for (const auto& pr : pairs) {
    Cx lhs = dtheta1(pr[0], pr[1]);
    Cx rhs = wedgeEval(cf.theta1, omega, pr[0], pr[1]) +
             wedgeEval(thc, tau1, pr[0], pr[1]);
    res = std::max(res, std::abs(lhs - rhs));
  }
  Cx w = -pair1(omega, cf.algebra.bracket(cf.Z1, cf.Z1.conjugate()));
  res = std::max(res, std::abs(w.imag()));
  // dω₁¹(Z₁,Z₁̄) carries only the θ¹∧θ¹̄ component, so it must reproduce
  // the stored scalar curvature exactly.
  res = std::max(res, std::abs(w.real() - geom.W));
  return res;
}

PseudohermitianGeometry geometryOf(const LeftInvariantStructure& S) {
  return solveStructureEquations(adaptedCoframe(S));
}

bool sqrtExact(const Rational& v, Rational& root, bool& timesSqrt2) {
  if (v < 0) return false;
  if (v == 0) {
    root = 0;
    timesSqrt2 = false;
    return true;
  }
  auto trySquare = [](const Rational& w, Rational& r) {
    mpz_class num = w.get_num(), den = w.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
      return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    r = Rational(rn) / Rational(rd);
    return true;
  };
  if (trySquare(v, root)) {
    timesSqrt2 = false;
    return true;
  }
  Rational half = v / 2;
  if (trySquare(half, root)) {
    timesSqrt2 = true;
    return true;
  }
  return false;
}

namespace {

using PolyVec = std::array<Poly, 3>;

PolyVec bracketExact(const std::array<std::array<std::array<Rational, 3>, 3>, 3>& c,
                     const PolyVec& u, const PolyVec& v) {
  PolyVec out{Poly::zero(), Poly::zero(), Poly::zero()};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (c[k][i][j] == 0 || u[i].isZero() || v[j].isZero()) continue;
        out[k] = out[k] + (u[i] * v[j]).scaled(RationalComplex(c[k][i][j]));
      }
  return out;
}

Poly evalCovExact(const PolyVec& cov, const PolyVec& vec) {
  Poly out = Poly::zero();
  for (int i = 0; i < 3; ++i) out = out + cov[i] * vec[i];
  return out;
}

PolyVec conjVec(const PolyVec& v) { return {v[0].conj(), v[1].conj(), v[2].conj()}; }

}  // namespace

ExactGeometry exactGeometry(const LieAlgebra3& g, const Rational& s,
                            const Rational& a, const Rational& b,
                            const Rational& c) {
  if (s <= 0) throw DegenerateContact("contact scale s must be positive");
  if (a * a + b * c != -1)
    throw NonCompatibleJ("chart constraint a^2 + bc = -1 violated");
  if (c >= 0) throw NonCompatibleJ("positivity branch requires c < 0");

  std::array<std::array<std::array<Rational, 3>, 3>, 3> cc;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cc[k][i][j] = Rational(g.c[k](i, j));
  if (cc[2][0][2] != 0 || cc[2][1][2] != 0 || cc[2][0][1] == 0)
    throw DegenerateContact("theta = s*sigma^3 is not adapted to this algebra");

  Rational d12 = -s * cc[2][0][1];          // dθ(e₁,e₂)
  Rational leviSq = 2 * c * d12;            // (1/μ)², positive on the branch
  if (leviSq <= 0) throw NonCompatibleJ("Levi form not positive for this chart");
  Rational rho;
  bool times2 = false;
  if (!sqrtExact(leviSq, rho, times2))
    throw std::domain_error("Levi factor has no exact square root in Q(sqrt2)");
  Poly sigma = times2 ? Poly::sqrt2(rho) : Poly::constant(RationalComplex(rho));
  Poly mu = sigma.scaled(RationalComplex(1 / leviSq));  // μ = σ/σ² = 1/σ

  PolyVec Z{mu.scaled(RationalComplex(1, -a)), mu.scaled(RationalComplex(0, -c)),
            Poly::zero()};
  PolyVec Zb = conjVec(Z);
  PolyVec T{Poly::zero(), Poly::zero(), Poly::constant(RationalComplex(1 / s))};
  Poly th1a = sigma.scaled(RationalComplex(rat(1, 2)));
  PolyVec th1{th1a, th1a.scaled(RationalComplex(-a / c, 1 / c)), Poly::zero()};
  PolyVec th1b = conjVec(th1);
  PolyVec th{Poly::zero(), Poly::zero(), Poly::constant(RationalComplex(s))};

  if (!(evalCovExact(th1, Z) == Poly::constant(RationalComplex(1))) ||
      !evalCovExact(th1, Zb).isZero() || !evalCovExact(th1, T).isZero())
    throw SingularSystem("exact coframe duality failed");

  auto dtheta1 = [&](const PolyVec& u, const PolyVec& v) {
    return evalCovExact(th1, bracketExact(cc, u, v)).scaled(RationalComplex(-1));
  };
  ExactGeometry out;
  out.q = dtheta1(Z, Zb);
  out.r = dtheta1(Z, T);
  out.A11 = dtheta1(Zb, T).conj().scaled(RationalComplex(-1));
  out.p = out.q.conj().scaled(RationalComplex(-1));

  PolyVec omega;
  for (int i = 0; i < 3; ++i)
    omega[i] = th1[i] * out.p + th1b[i] * out.q + th[i] * out.r;
  out.W = evalCovExact(omega, bracketExact(cc, Z, Zb)).scaled(RationalComplex(-1));

  if (!(out.r + out.r.conj()).isZero() || !(out.W == out.W.conj()))
    throw SingularSystem("exact structure equations violated reality");
  return out;
}

}  // namespace torsionflow
