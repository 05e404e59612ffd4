#ifndef TORSIONFLOW_LIEALGEBRA_HPP
#define TORSIONFLOW_LIEALGEBRA_HPP

#include <Eigen/Dense>
#include <array>

namespace torsionflow {

/// 3-dimensional real Lie algebra given by structure constants
/// [e_i, e_j] = Σ_k c^k_ij e_k, stored as three matrices c[k](i,j).
struct LieAlgebra3 {
  std::array<Eigen::Matrix3d, 3> c;

  Eigen::Vector3d bracket(const Eigen::Vector3d& u, const Eigen::Vector3d& v) const;
  Eigen::Vector3cd bracket(const Eigen::Vector3cd& u, const Eigen::Vector3cd& v) const;
};

/// True iff c^k_ij = −c^k_ji and the Jacobi residual
/// [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] vanishes exactly.
bool jacobiCheck(const LieAlgebra3& g);

/// [e₁,e₂] = 2e₃, [e₂,e₃] = 2e₁, [e₃,e₁] = 2e₂.
LieAlgebra3 su2Algebra();

/// [e₁,e₂] = e₃, all other brackets zero.
LieAlgebra3 heisenbergAlgebra();

}  // namespace torsionflow

#endif
