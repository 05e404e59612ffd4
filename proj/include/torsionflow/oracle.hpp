#ifndef TORSIONFLOW_ORACLE_HPP
#define TORSIONFLOW_ORACLE_HPP

#include <array>
#include <functional>
#include <vector>

#include "torsionflow/polynomial.hpp"
#include "torsionflow/quadcomplex.hpp"

namespace torsionflow {
namespace oracle {

/// A complex scalar field on R^3 in the coordinates (x, y, t), evaluated in
/// quad precision. All differential operators below act by nested central
/// differences, so this module is independent of the symbolic engine and
/// serves as its ground truth on sample points.
using Field = std::function<QComplex(QReal, QReal, QReal)>;

/// Central-difference step. Fourth-order nestings lose ~4 digits per level;
/// quad arithmetic keeps the final values good to far better than 1e-6.
QReal step();

Field fieldOf(const Poly& p);
Field constantField(QComplex c);

Field add(Field a, Field b);
Field sub(Field a, Field b);
Field mul(Field a, Field b);
Field scale(QComplex c, Field a);
Field conjField(Field a);
/// e^{k a}
Field expScaled(QReal k, Field a);

/// Central difference in coordinate var (0 = x, 1 = y, 2 = t).
Field partial(Field f, int var);

/// Frame vector fields of the standard flat pseudohermitian structure:
///   Z1 = (dz + i zbar dt)/sqrt2,  Z1bar = (dzbar - i z dt)/sqrt2,  T = dt.
Field frameZ1(Field f);
Field frameZ1bar(Field f);
Field frameT(Field f);

/// Sublaplacian on scalars: Z1bar Z1 + Z1 Z1bar.
Field sublaplacian(Field f);

/// Third-order CR Paneitz-type operator on the flat background:
/// Z1 Z1 Z1bar (the torsion term vanishes flat).
Field thirdOrderOp(Field f);

/// Fourth-order CR Paneitz operator on the flat background, in the symmetric
/// form (Z1bar P f + conj-structure)/2; equals (Lap^2 + T^2)/4 on flat space.
Field fourthOrderOp(Field f);

/// Torsion coefficient of the rescaled structure theta -> e^{2f} theta on the
/// flat background: e^{-2f} (2 i f_{11} - 4 i f_1 f_1).
Field rescaledTorsion(Field f);

/// Scalar curvature of the rescaled structure on the flat background:
/// e^{-2f} (-4 Lap f - 8 f_1 f_{1bar}).
Field rescaledScalarCurv(Field f);

/// The 27 sample points of the grid {-1/2, 0, 1/2}^3.
const std::vector<std::array<QReal, 3>>& samplePoints();

/// |a - b| / max(1, |a|, |b|).
QReal relError(QComplex a, QComplex b);

/// Largest relative discrepancy between two fields over the sample grid.
QReal maxRelError(const Field& a, const Field& b);

/// Largest relative discrepancy between a field and an exact polynomial.
QReal maxRelError(const Field& a, const Poly& p);

}  // namespace oracle
}  // namespace torsionflow

#endif
