#include "isoplate/stiefel.hpp"

#include <cmath>
#include <stdexcept>

namespace isoplate {

namespace {

// sin(t)/t and (1 - cos(t))/t^2 with series fallbacks near t = 0.
double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

double cosc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  }
  return (1.0 - std::cos(t)) / (t * t);
}

template <int N>
bool exactly_skew(const Eigen::Matrix<double, N, N>& x) {
  for (int i = 0; i < N; ++i) {
    if (x(i, i) != 0.0) return false;
    for (int j = i + 1; j < N; ++j)
      if (x(i, j) != -x(j, i)) return false;
  }
  return true;
}

// Degree-6 diagonal rational approximant with scaling-and-squaring. The
// input is scaled below 0.25 in the induced 1-norm, where the approximant
// is accurate to unit roundoff.
template <int N>
Eigen::Matrix<double, N, N> pade6_exp(Eigen::Matrix<double, N, N> a) {
  using Mat = Eigen::Matrix<double, N, N>;
  static const double c[7] = {1.0,         1.0 / 2.0,     5.0 / 44.0,
                              1.0 / 66.0,  1.0 / 792.0,   1.0 / 15840.0,
                              1.0 / 665280.0};

  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    a *= std::ldexp(1.0, -squarings);
  }

  const Mat id = Mat::Identity();
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const Mat even = c[0] * id + c[2] * a2 + c[4] * a4 + c[6] * a6;
  const Mat odd = (c[1] * id + c[3] * a2 + c[5] * a4) * a;

  Mat r = Mat((even - odd).partialPivLu().solve(even + odd));
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

Eigen::Matrix2d rotation2(double theta) {
  Eigen::Matrix2d r;
  const double c = std::cos(theta), s = std::sin(theta);
  r << c, s, -s, c;
  return r;
}

// Rodrigues: exp of a 3x3 skew matrix.
Eigen::Matrix3d rodrigues(const Eigen::Matrix3d& x) {
  const Eigen::Vector3d axis(x(2, 1), x(0, 2), x(1, 0));
  const double theta = axis.norm();
  return Eigen::Matrix3d::Identity() + sinc(theta) * x +
         cosc(theta) * (x * x);
}

}  // namespace

StiefelPoint::StiefelPoint(const Matrix3x2& u) : u_(u) {
  const double defect =
      (u.transpose() * u - Eigen::Matrix2d::Identity()).norm();
  if (!u.allFinite() || defect > kOrthoTol) {
    throw std::invalid_argument(
        "StiefelPoint: columns not orthonormal (defect " +
        std::to_string(defect) + ")");
  }
}

double StiefelPoint::ortho_defect() const {
  return (u_.transpose() * u_ - Eigen::Matrix2d::Identity()).norm();
}

Matrix3x2 tangent_project(const StiefelPoint& u, const Matrix3x2& w) {
  const Eigen::Matrix2d utw = u.matrix().transpose() * w;
  const Eigen::Matrix2d sym = 0.5 * (utw + utw.transpose());
  return w - u.matrix() * sym;
}

Eigen::Matrix2d sym_bracket(const StiefelPoint& u, const Matrix3x2& m) {
  const Eigen::Matrix2d utm = u.matrix().transpose() * m;
  return utm + utm.transpose();
}

Eigen::Matrix2d matrix_exp(const Eigen::Matrix2d& x) {
  if (exactly_skew<2>(x)) return rotation2(x(0, 1));
  return pade6_exp<2>(x);
}

Eigen::Matrix3d matrix_exp(const Eigen::Matrix3d& x) {
  if (exactly_skew<3>(x)) return rodrigues(x);
  return pade6_exp<3>(x);
}

Eigen::Matrix4d matrix_exp(const Eigen::Matrix4d& x) { return pade6_exp<4>(x); }

Matrix6d matrix_exp(const Matrix6d& x) { return pade6_exp<6>(x); }

Matrix3x2 exp_map(const StiefelPoint& u, const Matrix3x2& w, double tau) {
  const Matrix3x2& U = u.matrix();
  // p - p^T is exactly skew entrywise, which keeps the Rodrigues path live.
  const Eigen::Matrix3d p = w * U.transpose();
  const Eigen::Matrix3d a = tau * (p - p.transpose());
  const Eigen::Matrix2d e = -tau * (U.transpose() * w);
  return matrix_exp(a) * U * matrix_exp(e);
}

Matrix3x2 dexp_map(const StiefelPoint& u, const Matrix3x2& w, double tau,
                   const Matrix3x2& g) {
  const Matrix3x2& U = u.matrix();

  const Eigen::Matrix3d p = w * U.transpose();
  const Eigen::Matrix3d a = tau * (p - p.transpose());
  const Eigen::Matrix3d pg = g * U.transpose();
  const Eigen::Matrix3d da = tau * (pg - pg.transpose());
  const Eigen::Matrix2d e = -tau * (U.transpose() * w);
  const Eigen::Matrix2d de = -tau * (U.transpose() * g);

  Matrix6d block6 = Matrix6d::Zero();
  block6.topLeftCorner<3, 3>() = a;
  block6.bottomRightCorner<3, 3>() = a;
  block6.topRightCorner<3, 3>() = da;
  const Matrix6d exp6 = matrix_exp(block6);
  const Eigen::Matrix3d exp_a = exp6.topLeftCorner<3, 3>();
  const Eigen::Matrix3d dexp_a = exp6.topRightCorner<3, 3>();

  Eigen::Matrix4d block4 = Eigen::Matrix4d::Zero();
  block4.topLeftCorner<2, 2>() = e;
  block4.bottomRightCorner<2, 2>() = e;
  block4.topRightCorner<2, 2>() = de;
  const Eigen::Matrix4d exp4 = matrix_exp(block4);
  const Eigen::Matrix2d exp_e = exp4.topLeftCorner<2, 2>();
  const Eigen::Matrix2d dexp_e = exp4.topRightCorner<2, 2>();

  return dexp_a * U * exp_e + exp_a * U * dexp_e;
}

}  // namespace isoplate
