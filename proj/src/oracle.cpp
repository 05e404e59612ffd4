#include "torsionflow/oracle.hpp"

#include <utility>

namespace torsionflow {
namespace oracle {

QReal step() { return QReal(1) / QReal(10000); }

Field fieldOf(const Poly& p) {
  return [p](QReal x, QReal y, QReal t) { return evalQuad(p, x, y, t); };
}

Field constantField(QComplex c) {
  return [c](QReal, QReal, QReal) { return c; };
}

Field add(Field a, Field b) {
  return [a = std::move(a), b = std::move(b)](QReal x, QReal y, QReal t) {
    return a(x, y, t) + b(x, y, t);
  };
}

Field sub(Field a, Field b) {
  return [a = std::move(a), b = std::move(b)](QReal x, QReal y, QReal t) {
    return a(x, y, t) - b(x, y, t);
  };
}

Field mul(Field a, Field b) {
  return [a = std::move(a), b = std::move(b)](QReal x, QReal y, QReal t) {
    return a(x, y, t) * b(x, y, t);
  };
}

Field scale(QComplex c, Field a) {
  return [c, a = std::move(a)](QReal x, QReal y, QReal t) {
    return c * a(x, y, t);
  };
}

Field conjField(Field a) {
  return [a = std::move(a)](QReal x, QReal y, QReal t) {
    return a(x, y, t).conj();
  };
}

Field expScaled(QReal k, Field a) {
  return [k, a = std::move(a)](QReal x, QReal y, QReal t) {
    return qexp(k * a(x, y, t));
  };
}

Field partial(Field f, int var) {
  const QReal h = step();
  return [f = std::move(f), var, h](QReal x, QReal y, QReal t) {
    const QReal dx = var == 0 ? h : 0;
    const QReal dy = var == 1 ? h : 0;
    const QReal dt = var == 2 ? h : 0;
    return (f(x + dx, y + dy, t + dt) - f(x - dx, y - dy, t - dt)) / (2 * h);
  };
}

Field frameZ1(Field f) {
  Field fx = partial(f, 0);
  Field fy = partial(f, 1);
  Field ft = partial(f, 2);
  return [fx = std::move(fx), fy = std::move(fy), ft = std::move(ft)](
             QReal x, QReal y, QReal t) {
    // (1/sqrt2) [ (f_x - i f_y)/2 + i zbar f_t ]
    QComplex dz = (fx(x, y, t) - fy(x, y, t).timesI()) / QReal(2);
    QComplex zbar(x, -y);
    return (dz + (zbar * ft(x, y, t)).timesI()) / sqrtq(2);
  };
}

Field frameZ1bar(Field f) {
  Field fx = partial(f, 0);
  Field fy = partial(f, 1);
  Field ft = partial(f, 2);
  return [fx = std::move(fx), fy = std::move(fy), ft = std::move(ft)](
             QReal x, QReal y, QReal t) {
    // (1/sqrt2) [ (f_x + i f_y)/2 - i z f_t ]
    QComplex dzbar = (fx(x, y, t) + fy(x, y, t).timesI()) / QReal(2);
    QComplex z(x, y);
    return (dzbar - (z * ft(x, y, t)).timesI()) / sqrtq(2);
  };
}

Field frameT(Field f) { return partial(std::move(f), 2); }

Field sublaplacian(Field f) {
  return add(frameZ1bar(frameZ1(f)), frameZ1(frameZ1bar(f)));
}

Field thirdOrderOp(Field f) { return frameZ1(frameZ1(frameZ1bar(std::move(f)))); }

Field fourthOrderOp(Field f) {
  Field left = frameZ1bar(thirdOrderOp(f));
  Field right = conjField(thirdOrderOp(conjField(f)));
  return scale(QComplex(QReal(0.5)), add(std::move(left), frameZ1(std::move(right))));
}

Field rescaledTorsion(Field f) {
  Field f1 = frameZ1(f);
  Field f11 = frameZ1(frameZ1(f));
  Field inner = sub(scale(QComplex(0, 2), std::move(f11)),
                    scale(QComplex(0, 4), mul(f1, f1)));
  return mul(expScaled(-2, std::move(f)), std::move(inner));
}

Field rescaledScalarCurv(Field f) {
  Field lap = sublaplacian(f);
  Field grad = mul(frameZ1(f), frameZ1bar(f));
  Field inner = sub(scale(QComplex(QReal(-4)), std::move(lap)),
                    scale(QComplex(QReal(8)), std::move(grad)));
  return mul(expScaled(-2, std::move(f)), std::move(inner));
}

const std::vector<std::array<QReal, 3>>& samplePoints() {
  static const std::vector<std::array<QReal, 3>> pts = [] {
    std::vector<std::array<QReal, 3>> v;
    const QReal vals[3] = {QReal(-0.5), QReal(0), QReal(0.5)};
    for (QReal x : vals)
      for (QReal y : vals)
        for (QReal t : vals) v.push_back({x, y, t});
    return v;
  }();
  return pts;
}

QReal relError(QComplex a, QComplex b) {
  QReal denom = 1;
  if (a.abs() > denom) denom = a.abs();
  if (b.abs() > denom) denom = b.abs();
  return (a - b).abs() / denom;
}

QReal maxRelError(const Field& a, const Field& b) {
  QReal worst = 0;
  for (const auto& p : samplePoints()) {
    QReal e = relError(a(p[0], p[1], p[2]), b(p[0], p[1], p[2]));
    if (e > worst) worst = e;
  }
  return worst;
}

QReal maxRelError(const Field& a, const Poly& p) {
  return maxRelError(a, fieldOf(p));
}

}  // namespace oracle
}  // namespace torsionflow
