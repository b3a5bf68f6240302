#pragma once

#include "poro/core.hpp"

namespace poro {

/// Dimensionless compressible neo-Hookean parameters. The Lame pair is
/// derived from the Poisson ratio alone: mu = 1/(2(1+nu)),
/// lambda = nu/((1+nu)(1-2nu)).
struct MaterialParams {
  explicit MaterialParams(double poisson_ratio);

  double nu;
  double mu;
  double lambda;
};

/// Strain energy density
///   psi(F) = (I1 - 3)/(4(1+nu)) - ln J/(2(1+nu)) + nu (ln J)^2/(2(1+nu)(1-2nu))
/// with I1 = tr(F^T F), J = det F. Throws KinematicError when det F <= 0.
double strain_energy(const Mat3& F, const MaterialParams& p);

/// First Piola-Kirchhoff stress, the closed-form gradient of strain_energy:
///   P = mu (F - F^-T) + lambda ln J F^-T.
Mat3 pk1(const Mat3& F, const MaterialParams& p);

/// Consistent material tangent A_iJkL = dP_iJ/dF_kL. Has major symmetry.
Tensor4 material_tangent(const Mat3& F, const MaterialParams& p);

/// Piola transformation tensor G = det(F) F^-1.
Mat3 piola_transform(const Mat3& F);

/// Nanson map of a reference area element: returns G^T N dA (unnormalized);
/// current area is its norm, current normal its direction.
Vec3 nanson_area(const Mat3& F, const Vec3& reference_normal, double reference_area);

/// det F with the admissibility check shared by the functions above.
double jacobian_checked(const Mat3& F);

}  // namespace poro
