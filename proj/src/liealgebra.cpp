#include "torsionflow/liealgebra.hpp"

namespace torsionflow {

Eigen::Vector3d LieAlgebra3::bracket(const Eigen::Vector3d& u,
                                     const Eigen::Vector3d& v) const {
  Eigen::Vector3d out;
  for (int k = 0; k < 3; ++k) out(k) = u.dot(c[k] * v);
  return out;
}

Eigen::Vector3cd LieAlgebra3::bracket(const Eigen::Vector3cd& u,
                                      const Eigen::Vector3cd& v) const {
  Eigen::Vector3cd out;
  for (int k = 0; k < 3; ++k)
    out(k) = u.transpose() * c[k].cast<std::complex<double>>() * v;
  return out;
}

bool jacobiCheck(const LieAlgebra3& g) {
  for (int k = 0; k < 3; ++k)
    if ((g.c[k] + g.c[k].transpose()).cwiseAbs().maxCoeff() != 0.0) return false;
  Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) {
        Eigen::Vector3d ei = id.col(i), ej = id.col(j), ek = id.col(k);
        Eigen::Vector3d res = g.bracket(ei, g.bracket(ej, ek)) +
                              g.bracket(ej, g.bracket(ek, ei)) +
                              g.bracket(ek, g.bracket(ei, ej));
        if (res.cwiseAbs().maxCoeff() != 0.0) return false;
      }
  return true;
}

LieAlgebra3 su2Algebra() {
  LieAlgebra3 g;
  for (auto& m : g.c) m.setZero();
  // [e1,e2] = 2e3, [e2,e3] = 2e1, [e3,e1] = 2e2 and antisymmetric partners
  g.c[2](0, 1) = 2.0; g.c[2](1, 0) = -2.0;
  g.c[0](1, 2) = 2.0; g.c[0](2, 1) = -2.0;
  g.c[1](2, 0) = 2.0; g.c[1](0, 2) = -2.0;
  return g;
}

LieAlgebra3 heisenbergAlgebra() {
  LieAlgebra3 g;
  for (auto& m : g.c) m.setZero();
  g.c[2](0, 1) = 1.0; g.c[2](1, 0) = -1.0;
  return g;
}

}  // namespace torsionflow
