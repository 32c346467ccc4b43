#pragma once

#include <Eigen/Dense>

namespace isoplate {

using Matrix3x2 = Eigen::Matrix<double, 3, 2>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// A 3x2 matrix with orthonormal columns, i.e. a point of St(3,2).
///
/// Construction validates U^T U = I and throws std::invalid_argument when the
/// defect exceeds kOrthoTol. The class never re-orthonormalizes: a failed
/// validation indicates a bug upstream and must surface, not be repaired.
class StiefelPoint {
 public:
  static constexpr double kOrthoTol = 1e-10;

  explicit StiefelPoint(const Matrix3x2& u);

  const Matrix3x2& matrix() const { return u_; }

  /// Frobenius norm of U^T U - I.
  double ortho_defect() const;

 private:
  Matrix3x2 u_;
};

/// Orthogonal projection of w onto the tangent space at u:
/// w - u sym(u^T w).
Matrix3x2 tangent_project(const StiefelPoint& u, const Matrix3x2& w);

/// u^T m + m^T u. Symmetric by construction; vanishes exactly when m is
/// tangent at u.
Eigen::Matrix2d sym_bracket(const StiefelPoint& u, const Matrix3x2& m);

/// Matrix exponential for the small square sizes the geodesic formulas need.
/// Exactly skew-symmetric 2x2/3x3 inputs take a closed-form rotation path
/// (planar rotation / Rodrigues); everything else goes through
/// scaling-and-squaring with a degree-6 diagonal rational approximant.
Eigen::Matrix2d matrix_exp(const Eigen::Matrix2d& x);
Eigen::Matrix3d matrix_exp(const Eigen::Matrix3d& x);
Eigen::Matrix4d matrix_exp(const Eigen::Matrix4d& x);
Matrix6d matrix_exp(const Matrix6d& x);

/// exp(tau (w u^T - u w^T)) u exp(-tau u^T w).
///
/// For tangent w this is the geodesic through u with initial velocity w; the
/// formula stays defined (and smooth) for arbitrary w, in which case the
/// result need not have orthonormal columns, hence the raw matrix return.
Matrix3x2 exp_map(const StiefelPoint& u, const Matrix3x2& w, double tau);

/// Directional derivative of mu -> exp_map(u, mu, tau) at mu = w in
/// direction g. Both exponential factors are differentiated exactly through
/// the doubled-block identity
///   exp([[X, D], [0, X]]) = [[exp(X), DExp_X(D)], [0, exp(X)]]
/// and combined by the product rule, so the result is exact to rounding.
/// Linear in g.
Matrix3x2 dexp_map(const StiefelPoint& u, const Matrix3x2& w, double tau,
                   const Matrix3x2& g);

}  // namespace isoplate
