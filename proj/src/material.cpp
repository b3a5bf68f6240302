#include "poro/material.hpp"

#include <cmath>

namespace poro {

MaterialParams::MaterialParams(double poisson_ratio) : nu(poisson_ratio) {
  if (!(nu > -1.0 && nu < 0.5))
    throw ArgumentError("poisson ratio must lie strictly in (-1, 0.5), got " +
                        std::to_string(nu));
  mu = 1.0 / (2.0 * (1.0 + nu));
  lambda = nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
}

double jacobian_checked(const Mat3& F) {
  const double J = F.determinant();
  if (!(J > 0.0))
    throw KinematicError("deformation gradient has non-positive determinant J=" +
                         std::to_string(J));
  return J;
}

double strain_energy(const Mat3& F, const MaterialParams& p) {
  const double J = jacobian_checked(F);
  const double I1 = (F.transpose() * F).trace();
  const double lnJ = std::log(J);
  return 0.5 * p.mu * (I1 - 3.0) - p.mu * lnJ + 0.5 * p.lambda * lnJ * lnJ;
}

Mat3 pk1(const Mat3& F, const MaterialParams& p) {
  const double J = jacobian_checked(F);
  const Mat3 FinvT = F.inverse().transpose();
  const double lnJ = std::log(J);
  return p.mu * (F - FinvT) + p.lambda * lnJ * FinvT;
}

Tensor4 material_tangent(const Mat3& F, const MaterialParams& p) {
  const double J = jacobian_checked(F);
  const Mat3 Finv = F.inverse();
  const double lnJ = std::log(J);
  const double c = p.mu - p.lambda * lnJ;
  Tensor4 A;
  for (int i = 0; i < 3; ++i)
    for (int Jj = 0; Jj < 3; ++Jj)
      for (int k = 0; k < 3; ++k)
        for (int L = 0; L < 3; ++L) {
          double v = 0.0;
          if (i == k && Jj == L) v += p.mu;
          // d(F^-T)_iJ/dF_kL = -F^-T_iL F^-T_kJ, F^-T_ab = Finv(b,a)
          v += c * Finv(L, i) * Finv(Jj, k);
          v += p.lambda * Finv(Jj, i) * Finv(L, k);
          A(i, Jj, k, L) = v;
        }
  return A;
}

Mat3 piola_transform(const Mat3& F) {
  const double J = jacobian_checked(F);
  return J * F.inverse();
}

Vec3 nanson_area(const Mat3& F, const Vec3& reference_normal, double reference_area) {
  const Mat3 G = piola_transform(F);
  return G.transpose() * reference_normal * reference_area;
}

}  // namespace poro
