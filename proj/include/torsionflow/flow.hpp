#ifndef TORSIONFLOW_FLOW_HPP
#define TORSIONFLOW_FLOW_HPP

#include <utility>
#include <vector>

#include "torsionflow/geometry.hpp"

namespace torsionflow {

struct StepUnstable : std::runtime_error {
  explicit StepUnstable(const std::string& what) : std::runtime_error(what) {}
};
struct InsufficientSamples : std::runtime_error {
  explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

/// Evolving left-invariant structure on su(2): J on the contact plane and
/// the contact-form scale s (θ = s·σ³).
struct FlowState {
  Eigen::Matrix2d J;
  double s = 1.0;
  double time = 0.0;
};

struct FlowConfig {
  bool normalized = false;
  double dt = 1e-3;
  double t_end = 0.25;
  double retraction_tolerance = 1e-10;
  double extinction_guard = 1e-6;
  /// Record every k-th step (the initial and final states always included).
  int sample_every = 1;
};

struct TrajectorySample {
  double time;
  FlowState state;
  double W;
  double A_abs;
  double energy;
  double volume;
  double dist_can;
};

enum class HaltReason { ReachedEnd, Extinction };

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool normalized = false;
  HaltReason halt = HaltReason::ReachedEnd;
  /// For an extinction halt: the time where s reaches 0 by linear
  /// extrapolation of the last accepted right side.
  double extinction_time = 0.0;
};

/// J_can with s = 1 at time 0.
FlowState canonicalStructure();

LeftInvariantStructure su2Structure(const FlowState& st);
PseudohermitianGeometry su2Geometry(const FlowState& st);

/// The real 2×2 endomorphism with components X(Z₁) = εZ₁̄ + conj. parts,
/// expressed in the (e₁,e₂) coordinates of the given coframe's plane.
Eigen::Matrix2d realEndomorphism(const AdaptedCoframe& cf, std::complex<double> eps);

/// Right side of the evolution: dJ = 2·A_{J,θ} as a real endomorphism and
/// ds = −2Ws (unnormalized) or 0 (volume-normalized: W is constant on a
/// homogeneous structure, so the scale equation freezes).
std::pair<Eigen::Matrix2d, double> flowRhs(const FlowState& st, bool normalized);

/// Projects back to the compatible-structure manifold: remove the trace,
/// then scale so J² = −I exactly to machine precision.
Eigen::Matrix2d retractJ(const Eigen::Matrix2d& J);

/// Classical fixed-step RK4 with retraction after each step; halts at
/// t_end or when s falls below the extinction guard; throws StepUnstable
/// if ‖J‖_F exceeds 1e6.
Trajectory integrate(const FlowState& start, const FlowConfig& cfg);

/// (energy, volume) = (W·Vol, |θ∧dθ(e₁,e₂,e₃)| = 2s²).
std::pair<double, double> einsteinHilbert(const FlowState& st);

/// Per interior sample: centered-difference dE/dt minus
/// −2(|A₁₁|² + W²)·Vol, the dissipation law of the unnormalized flow.
std::vector<double> dissipationResidual(const Trajectory& traj);

/// ‖J − J_can‖_F.
double distanceToCanonical(const Eigen::Matrix2d& J);

}  // namespace torsionflow

#endif
