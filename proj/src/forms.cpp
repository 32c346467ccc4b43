#include "isoplate/forms.hpp"

#include <cmath>

namespace isoplate {

namespace {

// Traces of the scalar P2 basis of both adjacent cells at the edge
// quadrature points: values, normal derivatives, and the double normal
// contraction of the (cellwise constant) Hessians.
struct EdgeTraces {
  int nsides = 1;
  double h = 0.0;
  std::array<Eigen::Vector2d, 3> xq;
  double val[2][3][6];
  double gn[2][3][6];
  double hnn[2][6];
};

EdgeTraces edge_traces(const TriMesh& mesh, const Edge& e) {
  EdgeTraces tr;
  tr.nsides = e.is_boundary() ? 1 : 2;
  tr.h = e.length;
  const auto& rule = seg_quadrature_deg5();
  const Eigen::Vector2d p0 = mesh.vertices[e.v0];
  const Eigen::Vector2d p1 = mesh.vertices[e.v1];
  for (int q = 0; q < 3; ++q) tr.xq[q] = p0 + rule[q].s * (p1 - p0);

  for (int s = 0; s < tr.nsides; ++s) {
    const CellFrame frame(mesh, e.cells[s]);
    const Eigen::Matrix2d jinv_t = frame.jac_inv.transpose();
    const auto& ref_h = p2_shape_hessians();
    for (int n = 0; n < 6; ++n) {
      const Eigen::Matrix2d h_phys = jinv_t * ref_h[n] * frame.jac_inv;
      tr.hnn[s][n] = e.normal.dot(h_phys * e.normal);
    }
    for (int q = 0; q < 3; ++q) {
      const Eigen::Vector2d ref = frame.to_reference(tr.xq[q]);
      std::array<double, 6> phi;
      std::array<Eigen::Vector2d, 6> grad;
      p2_shape_values(ref.x(), ref.y(), phi);
      p2_shape_grads(ref.x(), ref.y(), grad);
      for (int n = 0; n < 6; ++n) {
        tr.val[s][q][n] = phi[n];
        tr.gn[s][q][n] = e.normal.dot(jinv_t * grad[n]);
      }
    }
  }
  return tr;
}

// |T| Z_s : (G^T M + M^T G) for the symmetric storage basis.
Eigen::Vector3d lh_entries(const Matrix3x2& g, const Matrix3x2& m,
                           double area) {
  const Eigen::Matrix2d b =
      g.transpose() * m + m.transpose() * g;
  return area * Eigen::Vector3d(b(0, 0), b(1, 1), b(0, 1) + b(1, 0));
}

Matrix3x2 mu_basis(int row, int col) {
  Matrix3x2 e = Matrix3x2::Zero();
  e(row, col) = 1.0;
  return e;
}

}  // namespace

BoundaryData zero_boundary_data() {
  BoundaryData data;
  data.y_D = [](const Eigen::Vector2d&) { return Eigen::Vector3d::Zero(); };
  data.G_D = [](const Eigen::Vector2d&, const Eigen::Vector2d&) {
    return Eigen::Vector3d::Zero();
  };
  return data;
}

BoundaryData flat_boundary_data() {
  BoundaryData data;
  data.y_D = [](const Eigen::Vector2d& x) {
    return Eigen::Vector3d(x.x(), x.y(), 0.0);
  };
  data.G_D = [](const Eigen::Vector2d&, const Eigen::Vector2d& n) {
    return Eigen::Vector3d(n.x(), n.y(), 0.0);
  };
  return data;
}

BoundaryData compressed_strip_data(double amount) {
  BoundaryData data;
  data.y_D = [amount](const Eigen::Vector2d& x) {
    const double shift = x.x() > 0.0 ? amount : (x.x() < 0.0 ? -amount : 0.0);
    return Eigen::Vector3d(x.x() - shift, x.y(), 0.0);
  };
  data.G_D = [](const Eigen::Vector2d&, const Eigen::Vector2d& n) {
    return Eigen::Vector3d(n.x(), n.y(), 0.0);
  };
  return data;
}

SpMat assemble_a_h(const TriMesh& mesh, const DofMap& dofs,
                   const PenaltyParams& params) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.num_cells() * 108 + mesh.num_edges() * 432);

  // Cell Hessian products: constant integrands.
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellFrame frame(mesh, t);
    const Eigen::Matrix2d jinv_t = frame.jac_inv.transpose();
    const auto& ref_h = p2_shape_hessians();
    std::array<Eigen::Matrix2d, 6> h_phys;
    for (int n = 0; n < 6; ++n) h_phys[n] = jinv_t * ref_h[n] * frame.jac_inv;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        const double v = frame.area * (h_phys[a].array() * h_phys[b].array()).sum();
        for (int c = 0; c < 3; ++c)
          trip.emplace_back(dofs.y_index(t, a, c), dofs.y_index(t, b, c), v);
      }
  }

  const auto& rule = seg_quadrature_deg5();
  for (const Edge& e : mesh.edges) {
    if (!e.in_skeleton()) continue;
    const EdgeTraces tr = edge_traces(mesh, e);
    const double omega = tr.nsides == 2 ? 0.5 : 1.0;
    const int ndofs = 6 * tr.nsides;
    const double p1 = params.eta1 / tr.h;
    const double p0 = params.eta0 / (tr.h * tr.h * tr.h);

    double local[12][12] = {};
    for (int q = 0; q < 3; ++q) {
      const double wq = rule[q].w * tr.h;
      double jval[12], jgrad[12], avg[12];
      for (int i = 0; i < ndofs; ++i) {
        const int s = i / 6, n = i % 6;
        const double sign = s == 0 ? 1.0 : -1.0;
        jval[i] = sign * tr.val[s][q][n];
        jgrad[i] = sign * tr.gn[s][q][n];
        avg[i] = omega * tr.hnn[s][n];
      }
      for (int i = 0; i < ndofs; ++i)
        for (int j = 0; j < ndofs; ++j)
          local[i][j] += wq * (-jgrad[i] * avg[j] - avg[i] * jgrad[j] +
                               p1 * jgrad[i] * jgrad[j] + p0 * jval[i] * jval[j]);
    }

    for (int i = 0; i < ndofs; ++i)
      for (int j = 0; j < ndofs; ++j) {
        const int ti = e.cells[i / 6], tj = e.cells[j / 6];
        for (int c = 0; c < 3; ++c)
          trip.emplace_back(dofs.y_index(ti, i % 6, c),
                            dofs.y_index(tj, j % 6, c), local[i][j]);
      }
  }

  SpMat a(dofs.v_dofs(), dofs.v_dofs());
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

Eigen::VectorXd assemble_F_h(const TriMesh& mesh, const DofMap& dofs,
                             const PenaltyParams& params,
                             const BoundaryData& data) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs.v_dofs());
  const auto& rule = seg_quadrature_deg5();
  for (const Edge& e : mesh.edges) {
    if (e.kind != EdgeKind::Dirichlet) continue;
    const EdgeTraces tr = edge_traces(mesh, e);
    const double p1 = params.eta1 / tr.h;
    const double p0 = params.eta0 / (tr.h * tr.h * tr.h);
    const int t = e.cells[0];
    for (int q = 0; q < 3; ++q) {
      const double wq = rule[q].w * tr.h;
      const Eigen::Vector3d yd = data.y_D(tr.xq[q]);
      const Eigen::Vector3d gd = data.G_D(tr.xq[q], e.normal);
      for (int n = 0; n < 6; ++n)
        for (int c = 0; c < 3; ++c)
          f[dofs.y_index(t, n, c)] +=
              wq * (-gd[c] * tr.hnn[0][n] + p1 * gd[c] * tr.gn[0][q][n] +
                    p0 * yd[c] * tr.val[0][q][n]);
    }
  }
  return f;
}

Eigen::VectorXd apply_a_h_boundary_data_terms(const TriMesh& mesh,
                                              const DofMap& dofs,
                                              const PenaltyParams& params,
                                              const FEFunction& y) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs.v_dofs());
  const auto& rule = seg_quadrature_deg5();
  for (const Edge& e : mesh.edges) {
    if (e.kind != EdgeKind::Dirichlet) continue;
    const EdgeTraces tr = edge_traces(mesh, e);
    const double p1 = params.eta1 / tr.h;
    const double p0 = params.eta0 / (tr.h * tr.h * tr.h);
    const int t = e.cells[0];
    for (int q = 0; q < 3; ++q) {
      const double wq = rule[q].w * tr.h;
      const Eigen::Vector3d yd = eval(mesh, dofs, y, t, tr.xq[q]);
      const Eigen::Vector3d gd =
          eval_grad(mesh, dofs, y, t, tr.xq[q]) * e.normal;
      for (int n = 0; n < 6; ++n)
        for (int c = 0; c < 3; ++c)
          f[dofs.y_index(t, n, c)] +=
              wq * (-gd[c] * tr.hnn[0][n] + p1 * gd[c] * tr.gn[0][q][n] +
                    p0 * yd[c] * tr.val[0][q][n]);
    }
  }
  return f;
}

Eigen::VectorXd assemble_load(const TriMesh& mesh, const DofMap& dofs,
                              const Eigen::Vector3d& f) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofs.v_dofs());
  const auto& rule = tri_quadrature_deg4();
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const double detj = 2.0 * mesh.cell_area[t];
    for (const TriQuadPoint& qp : rule) {
      std::array<double, 6> phi;
      p2_shape_values(qp.xi, qp.eta, phi);
      const double wq = detj * qp.w;
      for (int n = 0; n < 6; ++n)
        for (int c = 0; c < 3; ++c)
          load[dofs.y_index(t, n, c)] += wq * f[c] * phi[n];
    }
  }
  return load;
}

SpMat assemble_coupling(const TriMesh& mesh, const DofMap& dofs) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.num_cells() * 36);
  const auto& rule = tri_quadrature_deg4();
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellFrame frame(mesh, t);
    const Eigen::Matrix2d jinv_t = frame.jac_inv.transpose();
    const double detj = 2.0 * mesh.cell_area[t];
    Eigen::Matrix<double, 6, 2> int_grad = Eigen::Matrix<double, 6, 2>::Zero();
    for (const TriQuadPoint& qp : rule) {
      std::array<Eigen::Vector2d, 6> grad;
      p2_shape_grads(qp.xi, qp.eta, grad);
      for (int n = 0; n < 6; ++n)
        int_grad.row(n) += detj * qp.w * (jinv_t * grad[n]).transpose();
    }
    for (int n = 0; n < 6; ++n)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 2; ++d)
          trip.emplace_back(dofs.y_index(t, n, c), dofs.mu_index(t, c, d),
                            int_grad(n, d));
  }
  SpMat k(dofs.v_dofs(), dofs.m_dofs());
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

LhBlocks assemble_l_h_blocks(const TriMesh& mesh, const DofMap& dofs,
                             const std::vector<StiefelPoint>& G) {
  std::vector<Eigen::Triplet<double>> ytrip, mtrip;
  ytrip.reserve(mesh.num_cells() * 54);
  mtrip.reserve(mesh.num_cells() * 18);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const Matrix3x2& g = G.at(t).matrix();
    const double area = mesh.cell_area[t];
    const CellFrame frame(mesh, t);
    const Eigen::Matrix2d jinv_t = frame.jac_inv.transpose();

    // Gradients of the P2 basis at the barycenter (reference (1/3, 1/3)).
    std::array<Eigen::Vector2d, 6> ref_grad;
    p2_shape_grads(1.0 / 3.0, 1.0 / 3.0, ref_grad);
    for (int n = 0; n < 6; ++n) {
      const Eigen::Vector2d grad = jinv_t * ref_grad[n];
      for (int c = 0; c < 3; ++c) {
        Matrix3x2 m = Matrix3x2::Zero();
        m.row(c) = grad.transpose();
        const Eigen::Vector3d v = lh_entries(g, m, area);
        for (int s = 0; s < 3; ++s)
          ytrip.emplace_back(dofs.y_index(t, n, c), dofs.gamma_index(t, s),
                             v[s]);
      }
    }
    for (int r = 0; r < 3; ++r)
      for (int d = 0; d < 2; ++d) {
        const Eigen::Vector3d v = lh_entries(g, mu_basis(r, d), area);
        for (int s = 0; s < 3; ++s)
          mtrip.emplace_back(dofs.mu_index(t, r, d), dofs.gamma_index(t, s),
                             v[s]);
      }
  }
  LhBlocks blocks;
  blocks.y_gamma.resize(dofs.v_dofs(), dofs.upsilon_dofs());
  blocks.y_gamma.setFromTriplets(ytrip.begin(), ytrip.end());
  blocks.mu_gamma.resize(dofs.m_dofs(), dofs.upsilon_dofs());
  blocks.mu_gamma.setFromTriplets(mtrip.begin(), mtrip.end());
  return blocks;
}

double l_h_value(const TriMesh& mesh, const DofMap& dofs,
                 const std::vector<StiefelPoint>& G, const FEFunction& m,
                 const FEFunction& z) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const Eigen::Matrix2d zmat = eval_upsilon(dofs, z, t);
    const Matrix3x2 mmat = eval_m(dofs, m, t);
    const Eigen::Matrix2d bracket = sym_bracket(G.at(t), mmat);
    sum += mesh.cell_area[t] * (zmat.array() * bracket.array()).sum();
  }
  return sum;
}

Eigen::VectorXd exp_block_residual(const TriMesh& mesh, const DofMap& dofs,
                                   const std::vector<StiefelPoint>& G,
                                   const FEFunction& mu, const FEFunction& y,
                                   double tau) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(dofs.m_dofs());
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const Matrix3x2 ex = exp_map(G.at(t), eval_m(dofs, mu, t), tau);
    const Matrix3x2 grad =
        eval_grad(mesh, dofs, y, t, mesh.cell_barycenter[t]);
    const double area = mesh.cell_area[t];
    for (int row = 0; row < 3; ++row)
      for (int col = 0; col < 2; ++col)
        r[dofs.mu_index(t, row, col)] = area * (ex(row, col) - grad(row, col));
  }
  return r;
}

SpMat exp_block_jacobian(const TriMesh& mesh, const DofMap& dofs,
                         const std::vector<StiefelPoint>& G,
                         const FEFunction& mu, double tau) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.num_cells() * 36);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const Matrix3x2 mu_t = eval_m(dofs, mu, t);
    const double area = mesh.cell_area[t];
    for (int rc = 0; rc < 3; ++rc)
      for (int cc = 0; cc < 2; ++cc) {
        const Matrix3x2 d =
            dexp_map(G.at(t), mu_t, tau, mu_basis(rc, cc));
        for (int row = 0; row < 3; ++row)
          for (int col = 0; col < 2; ++col)
            trip.emplace_back(dofs.mu_index(t, row, col),
                              dofs.mu_index(t, rc, cc),
                              area * d(row, col));
      }
  }
  SpMat j(dofs.m_dofs(), dofs.m_dofs());
  j.setFromTriplets(trip.begin(), trip.end());
  return j;
}

double energy(const TriMesh& mesh, const DofMap& dofs, const FEFunction& y,
              const Eigen::Vector3d& f, const PenaltyParams& params,
              const BoundaryData& data) {
  const SpMat a = assemble_a_h(mesh, dofs, params);
  const Eigen::VectorXd load = assemble_load(mesh, dofs, f);
  const Eigen::VectorXd fh = assemble_F_h(mesh, dofs, params, data);
  return 0.5 * y.coeffs.dot(a * y.coeffs) - load.dot(y.coeffs) -
         fh.dot(y.coeffs);
}

double isometry_defect(const TriMesh& mesh, const DofMap& dofs,
                       const FEFunction& y) {
  double worst = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const Matrix3x2 g = eval_grad(mesh, dofs, y, t, mesh.cell_barycenter[t]);
    const double defect =
        (g.transpose() * g - Eigen::Matrix2d::Identity()).norm();
    worst = std::max(worst, defect);
  }
  return worst;
}

double h2h_norm(const TriMesh& mesh, const DofMap& dofs, const FEFunction& y) {
  double sq = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const auto h = eval_hessian(mesh, dofs, y, t);
    for (int c = 0; c < 3; ++c) sq += mesh.cell_area[t] * h[c].squaredNorm();
  }
  const auto& rule = seg_quadrature_deg5();
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges[e];
    if (!edge.in_skeleton()) continue;
    const Eigen::Vector2d p0 = mesh.vertices[edge.v0];
    const Eigen::Vector2d p1 = mesh.vertices[edge.v1];
    const double h = edge.length;
    for (const SegQuadPoint& qp : rule) {
      const Eigen::Vector2d x = p0 + qp.s * (p1 - p0);
      const double wq = qp.w * h;
      sq += wq / h * jump_grad(mesh, dofs, y, e, x).squaredNorm();
      sq += wq / (h * h * h) * jump(mesh, dofs, y, e, x).squaredNorm();
    }
  }
  return std::sqrt(sq);
}

double mu_l2_norm(const TriMesh& mesh, const DofMap& dofs,
                  const FEFunction& mu) {
  double sq = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t)
    sq += mesh.cell_area[t] * eval_m(dofs, mu, t).squaredNorm();
  return std::sqrt(sq);
}

}  // namespace isoplate
