#include "isoplate/dgspace.hpp"

#include <stdexcept>

namespace isoplate {

FEFunction zero_function(const DofMap& dofs, Space space) {
  FEFunction f;
  f.space = space;
  f.coeffs = Eigen::VectorXd::Zero(dofs.dofs_of(space));
  return f;
}

void p2_shape_values(double xi, double eta, std::array<double, 6>& out) {
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  out[0] = l0 * (2.0 * l0 - 1.0);
  out[1] = l1 * (2.0 * l1 - 1.0);
  out[2] = l2 * (2.0 * l2 - 1.0);
  out[3] = 4.0 * l0 * l1;
  out[4] = 4.0 * l1 * l2;
  out[5] = 4.0 * l2 * l0;
}

void p2_shape_grads(double xi, double eta,
                    std::array<Eigen::Vector2d, 6>& out) {
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  const Eigen::Vector2d g0(-1.0, -1.0), g1(1.0, 0.0), g2(0.0, 1.0);
  out[0] = (4.0 * l0 - 1.0) * g0;
  out[1] = (4.0 * l1 - 1.0) * g1;
  out[2] = (4.0 * l2 - 1.0) * g2;
  out[3] = 4.0 * (l1 * g0 + l0 * g1);
  out[4] = 4.0 * (l2 * g1 + l1 * g2);
  out[5] = 4.0 * (l0 * g2 + l2 * g0);
}

const std::array<Eigen::Matrix2d, 6>& p2_shape_hessians() {
  static const std::array<Eigen::Matrix2d, 6> hessians = [] {
    const Eigen::Vector2d g0(-1.0, -1.0), g1(1.0, 0.0), g2(0.0, 1.0);
    auto outer2 = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
      return Eigen::Matrix2d(a * b.transpose() + b * a.transpose());
    };
    std::array<Eigen::Matrix2d, 6> h;
    h[0] = 2.0 * outer2(g0, g0);
    h[1] = 2.0 * outer2(g1, g1);
    h[2] = 2.0 * outer2(g2, g2);
    h[3] = 4.0 * outer2(g0, g1);
    h[4] = 4.0 * outer2(g1, g2);
    h[5] = 4.0 * outer2(g2, g0);
    return h;
  }();
  return hessians;
}

CellFrame::CellFrame(const TriMesh& mesh, int cell) {
  const auto& c = mesh.cells.at(cell);
  const Eigen::Vector2d& a = mesh.vertices[c[0]];
  jac.col(0) = mesh.vertices[c[1]] - a;
  jac.col(1) = mesh.vertices[c[2]] - a;
  jac_inv = jac.inverse();
  origin = a;
  area = mesh.cell_area[cell];
}

std::array<Eigen::Vector2d, 6> p2_nodes(const TriMesh& mesh, int cell) {
  const auto& c = mesh.cells.at(cell);
  const Eigen::Vector2d& a = mesh.vertices[c[0]];
  const Eigen::Vector2d& b = mesh.vertices[c[1]];
  const Eigen::Vector2d& d = mesh.vertices[c[2]];
  return {a, b, d, 0.5 * (a + b), 0.5 * (b + d), 0.5 * (d + a)};
}

Eigen::Vector3d eval(const TriMesh& mesh, const DofMap& dofs,
                     const FEFunction& y, int cell, const Eigen::Vector2d& x) {
  const CellFrame frame(mesh, cell);
  const Eigen::Vector2d ref = frame.to_reference(x);
  std::array<double, 6> phi;
  p2_shape_values(ref.x(), ref.y(), phi);
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int n = 0; n < 6; ++n)
    for (int c = 0; c < 3; ++c)
      out[c] += phi[n] * y.coeffs[dofs.y_index(cell, n, c)];
  return out;
}

Matrix3x2 eval_grad(const TriMesh& mesh, const DofMap& dofs,
                    const FEFunction& y, int cell, const Eigen::Vector2d& x) {
  const CellFrame frame(mesh, cell);
  const Eigen::Vector2d ref = frame.to_reference(x);
  std::array<Eigen::Vector2d, 6> ref_grads;
  p2_shape_grads(ref.x(), ref.y(), ref_grads);
  const Eigen::Matrix2d jinv_t = frame.jac_inv.transpose();
  Matrix3x2 out = Matrix3x2::Zero();
  for (int n = 0; n < 6; ++n) {
    const Eigen::Vector2d g = jinv_t * ref_grads[n];
    for (int c = 0; c < 3; ++c)
      out.row(c) += y.coeffs[dofs.y_index(cell, n, c)] * g.transpose();
  }
  return out;
}

std::array<Eigen::Matrix2d, 3> eval_hessian(const TriMesh& mesh,
                                            const DofMap& dofs,
                                            const FEFunction& y, int cell) {
  const CellFrame frame(mesh, cell);
  const Eigen::Matrix2d jinv_t = frame.jac_inv.transpose();
  const auto& ref_h = p2_shape_hessians();
  std::array<Eigen::Matrix2d, 3> out = {Eigen::Matrix2d::Zero(),
                                        Eigen::Matrix2d::Zero(),
                                        Eigen::Matrix2d::Zero()};
  for (int n = 0; n < 6; ++n) {
    const Eigen::Matrix2d h = jinv_t * ref_h[n] * frame.jac_inv;
    for (int c = 0; c < 3; ++c)
      out[c] += y.coeffs[dofs.y_index(cell, n, c)] * h;
  }
  return out;
}

Matrix3x2 eval_m(const DofMap& dofs, const FEFunction& mu, int cell) {
  Matrix3x2 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 2; ++c)
      out(r, c) = mu.coeffs[dofs.mu_index(cell, r, c)];
  return out;
}

Eigen::Matrix2d eval_upsilon(const DofMap& dofs, const FEFunction& g,
                             int cell) {
  Eigen::Matrix2d out;
  const double s11 = g.coeffs[dofs.gamma_index(cell, 0)];
  const double s22 = g.coeffs[dofs.gamma_index(cell, 1)];
  const double s12 = g.coeffs[dofs.gamma_index(cell, 2)];
  out << s11, s12, s12, s22;
  return out;
}

namespace {

void require_skeleton(const Edge& e) {
  if (!e.in_skeleton())
    throw std::invalid_argument("edge is not part of the active skeleton");
}

}  // namespace

TraceSample sample_traces(const TriMesh& mesh, const DofMap& dofs,
                          const FEFunction& y, int edge,
                          const Eigen::Vector2d& x) {
  const Edge& e = mesh.edges.at(edge);
  require_skeleton(e);
  TraceSample s;
  s.two_sided = !e.is_boundary();
  s.value[0] = eval(mesh, dofs, y, e.cells[0], x);
  s.grad[0] = eval_grad(mesh, dofs, y, e.cells[0], x);
  if (s.two_sided) {
    s.value[1] = eval(mesh, dofs, y, e.cells[1], x);
    s.grad[1] = eval_grad(mesh, dofs, y, e.cells[1], x);
  } else {
    s.value[1].setZero();
    s.grad[1].setZero();
  }
  return s;
}

Eigen::Vector3d jump(const TriMesh& mesh, const DofMap& dofs,
                     const FEFunction& y, int edge, const Eigen::Vector2d& x) {
  const TraceSample s = sample_traces(mesh, dofs, y, edge, x);
  return s.two_sided ? Eigen::Vector3d(s.value[0] - s.value[1]) : s.value[0];
}

Eigen::Vector3d jump_grad(const TriMesh& mesh, const DofMap& dofs,
                          const FEFunction& y, int edge,
                          const Eigen::Vector2d& x) {
  const Edge& e = mesh.edges.at(edge);
  const TraceSample s = sample_traces(mesh, dofs, y, edge, x);
  const Matrix3x2 g = s.two_sided ? Matrix3x2(s.grad[0] - s.grad[1]) : s.grad[0];
  return g * e.normal;
}

Eigen::Vector3d average_hessian_nn(const TriMesh& mesh, const DofMap& dofs,
                                   const FEFunction& y, int edge,
                                   const Eigen::Vector2d& x) {
  const Edge& e = mesh.edges.at(edge);
  require_skeleton(e);
  (void)x;  // Hessians are cellwise constant for P2.
  const auto h_minus = eval_hessian(mesh, dofs, y, e.cells[0]);
  Eigen::Vector3d out;
  if (e.is_boundary()) {
    for (int c = 0; c < 3; ++c)
      out[c] = e.normal.dot(h_minus[c] * e.normal);
  } else {
    const auto h_plus = eval_hessian(mesh, dofs, y, e.cells[1]);
    for (int c = 0; c < 3; ++c)
      out[c] = 0.5 * e.normal.dot((h_minus[c] + h_plus[c]) * e.normal);
  }
  return out;
}

FEFunction interpolate_v(
    const TriMesh& mesh, const DofMap& dofs,
    const std::function<Eigen::Vector3d(const Eigen::Vector2d&)>& f) {
  FEFunction out = zero_function(dofs, Space::V);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const auto nodes = p2_nodes(mesh, t);
    for (int n = 0; n < 6; ++n) {
      const Eigen::Vector3d v = f(nodes[n]);
      for (int c = 0; c < 3; ++c) out.coeffs[dofs.y_index(t, n, c)] = v[c];
    }
  }
  return out;
}

FEFunction interpolate_m(
    const TriMesh& mesh, const DofMap& dofs,
    const std::function<Matrix3x2(const Eigen::Vector2d&)>& f) {
  FEFunction out = zero_function(dofs, Space::M);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const Matrix3x2 v = f(mesh.cell_barycenter[t]);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 2; ++c) out.coeffs[dofs.mu_index(t, r, c)] = v(r, c);
  }
  return out;
}

FEFunction interpolate_upsilon(
    const TriMesh& mesh, const DofMap& dofs,
    const std::function<Eigen::Matrix2d(const Eigen::Vector2d&)>& f) {
  FEFunction out = zero_function(dofs, Space::Upsilon);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const Eigen::Matrix2d v = f(mesh.cell_barycenter[t]);
    out.coeffs[dofs.gamma_index(t, 0)] = v(0, 0);
    out.coeffs[dofs.gamma_index(t, 1)] = v(1, 1);
    out.coeffs[dofs.gamma_index(t, 2)] = 0.5 * (v(0, 1) + v(1, 0));
  }
  return out;
}

}  // namespace isoplate
