#include "torsionflow/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionflow {
namespace {

const Eigen::Matrix2d kCanonicalJ = (Eigen::Matrix2d() << 0, 1, -1, 0).finished();

struct Rhs {
  Eigen::Matrix2d dJ;
  double ds;
};

Rhs evaluateRhs(const Eigen::Matrix2d& J, double s, bool normalized) {
  if (s <= 0.0) {
    throw StepUnstable("contact scale collapsed below zero inside a step");
  }
  FlowState st;
  st.J = retractJ(J);
  st.s = s;
  const LeftInvariantStructure S = su2Structure(st);
  const AdaptedCoframe cf = adaptedCoframe(S);
  const PseudohermitianGeometry geom = solveStructureEquations(cf);
  Rhs rhs;
  rhs.dJ = 2.0 * realEndomorphism(cf, geom.A11);
  rhs.ds = normalized ? 0.0 : -2.0 * geom.W * s;
  return rhs;
}

TrajectorySample makeSample(const FlowState& st) {
  const PseudohermitianGeometry geom = su2Geometry(st);
  TrajectorySample smp;
  smp.time = st.time;
  smp.state = st;
  smp.W = geom.W;
  smp.A_abs = std::abs(geom.A11);
  const auto [energy, volume] = einsteinHilbert(st);
  smp.energy = energy;
  smp.volume = volume;
  smp.dist_can = distanceToCanonical(st.J);
  return smp;
}

}  // namespace

FlowState canonicalStructure() {
  FlowState st;
  st.J = kCanonicalJ;
  st.s = 1.0;
  st.time = 0.0;
  return st;
}

LeftInvariantStructure su2Structure(const FlowState& st) {
  LeftInvariantStructure S;
  S.algebra = su2Algebra();
  S.theta = Eigen::Vector3d(0.0, 0.0, st.s);
  S.J = st.J;
  return S;
}

PseudohermitianGeometry su2Geometry(const FlowState& st) {
  return geometryOf(su2Structure(st));
}

Eigen::Matrix2d realEndomorphism(const AdaptedCoframe& cf, std::complex<double> eps) {
  // X(v) = θ¹(v)·ε·Z₁̄ + conj for real v; real and tangent to the contact
  // plane, so only the (e₁,e₂) block is nonzero.
  Eigen::Matrix2d X;
  for (int j = 0; j < 2; ++j) {
    const std::complex<double> alpha = cf.theta1(j);
    const Eigen::Vector3cd col =
        alpha * eps * cf.Z1.conjugate() + std::conj(alpha * eps) * cf.Z1;
    X(0, j) = col(0).real();
    X(1, j) = col(1).real();
  }
  return X;
}

std::pair<Eigen::Matrix2d, double> flowRhs(const FlowState& st, bool normalized) {
  const Rhs rhs = evaluateRhs(st.J, st.s, normalized);
  return {rhs.dJ, rhs.ds};
}

Eigen::Matrix2d retractJ(const Eigen::Matrix2d& J) {
  Eigen::Matrix2d M = J - 0.5 * J.trace() * Eigen::Matrix2d::Identity();
  const double det = M.determinant();
  if (!(det > 0.0)) {
    throw StepUnstable("almost-complex retraction hit a degenerate endomorphism");
  }
  // Trace-free 2×2 satisfy M² = −det(M)·I, so M/√det squares to −I.
  return M / std::sqrt(det);
}

Trajectory integrate(const FlowState& start, const FlowConfig& cfg) {
  if (!(cfg.dt > 0.0)) {
    throw std::invalid_argument("step size must be positive");
  }
  if (cfg.sample_every < 1) {
    throw std::invalid_argument("sample stride must be at least 1");
  }

  Trajectory traj;
  traj.normalized = cfg.normalized;

  FlowState st = start;
  st.J = retractJ(st.J);
  traj.samples.push_back(makeSample(st));

  const double guard = cfg.extinction_guard;
  long step_index = 0;
  while (st.time < cfg.t_end - 1e-15) {
    const double h = std::min(cfg.dt, cfg.t_end - st.time);

    const Rhs k1 = evaluateRhs(st.J, st.s, cfg.normalized);

    // Halt before a step that would drive the contact scale to (or below)
    // the extinction guard, and report the linearly extrapolated zero.
    if (!cfg.normalized && st.s + h * k1.ds <= guard) {
      traj.halt = HaltReason::Extinction;
      traj.extinction_time = (k1.ds < 0.0) ? st.time + st.s / (-k1.ds) : st.time;
      break;
    }

    const Rhs k2 =
        evaluateRhs(st.J + 0.5 * h * k1.dJ, st.s + 0.5 * h * k1.ds, cfg.normalized);
    const Rhs k3 =
        evaluateRhs(st.J + 0.5 * h * k2.dJ, st.s + 0.5 * h * k2.ds, cfg.normalized);
    const Rhs k4 = evaluateRhs(st.J + h * k3.dJ, st.s + h * k3.ds, cfg.normalized);

    st.J = retractJ(st.J + (h / 6.0) * (k1.dJ + 2.0 * k2.dJ + 2.0 * k3.dJ + k4.dJ));
    st.s += (h / 6.0) * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
    st.time += h;
    ++step_index;

    if (!st.J.allFinite() || st.J.norm() > 1e6 || !std::isfinite(st.s)) {
      throw StepUnstable("flow left the stable regime");
    }
    if ((st.J * st.J + Eigen::Matrix2d::Identity()).norm() > cfg.retraction_tolerance) {
      throw StepUnstable("retraction failed to restore the complex structure");
    }

    const bool at_end = st.time >= cfg.t_end - 1e-15;
    if (step_index % cfg.sample_every == 0 || at_end) {
      traj.samples.push_back(makeSample(st));
    }
  }

  if (traj.halt == HaltReason::Extinction &&
      traj.samples.back().time < st.time - 1e-15) {
    traj.samples.push_back(makeSample(st));
  }
  return traj;
}

std::pair<double, double> einsteinHilbert(const FlowState& st) {
  const double volume = contactVolume(su2Algebra(), Eigen::Vector3d(0.0, 0.0, st.s));
  const double energy = su2Geometry(st).W * volume;
  return {energy, volume};
}

std::vector<double> dissipationResidual(const Trajectory& traj) {
  if (traj.normalized) {
    throw std::invalid_argument(
        "dissipation identity applies to the unnormalized flow only");
  }
  if (traj.samples.size() < 3) {
    throw InsufficientSamples(
        "need at least three samples for a centered difference");
  }
  std::vector<double> residuals;
  residuals.reserve(traj.samples.size() - 2);
  for (std::size_t i = 1; i + 1 < traj.samples.size(); ++i) {
    const TrajectorySample& lo = traj.samples[i - 1];
    const TrajectorySample& mid = traj.samples[i];
    const TrajectorySample& hi = traj.samples[i + 1];
    const double fd = (hi.energy - lo.energy) / (hi.time - lo.time);
    const double predicted =
        -2.0 * (mid.A_abs * mid.A_abs + mid.W * mid.W) * mid.volume;
    residuals.push_back(fd - predicted);
  }
  return residuals;
}

double distanceToCanonical(const Eigen::Matrix2d& J) {
  return (J - kCanonicalJ).norm();
}

}  // namespace torsionflow
