#include "isoplate/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace isoplate {

namespace {

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                   const Eigen::Vector2d& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace

int TriMesh::num_dirichlet_edges() const {
  int n = 0;
  for (const Edge& e : edges)
    if (e.kind == EdgeKind::Dirichlet) ++n;
  return n;
}

TriMesh make_trimesh(std::vector<Eigen::Vector2d> vertices,
                     std::vector<std::array<int, 3>> cells) {
  TriMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.cells = std::move(cells);

  const int ncells = mesh.num_cells();
  mesh.cell_area.resize(ncells);
  mesh.cell_barycenter.resize(ncells);
  mesh.h_max = 0.0;
  mesh.h_min = std::numeric_limits<double>::max();
  mesh.shape_regularity = 0.0;
  mesh.domain_area = 0.0;

  for (int t = 0; t < ncells; ++t) {
    auto& cell = mesh.cells[t];
    const Eigen::Vector2d& a = mesh.vertices[cell[0]];
    Eigen::Vector2d b = mesh.vertices[cell[1]];
    Eigen::Vector2d c = mesh.vertices[cell[2]];
    double area = signed_area(a, b, c);
    if (area < 0.0) {
      std::swap(cell[1], cell[2]);
      std::swap(b, c);
      area = -area;
    }
    if (area <= 0.0) throw std::invalid_argument("make_trimesh: degenerate cell");

    mesh.cell_area[t] = area;
    mesh.cell_barycenter[t] = (a + b + c) / 3.0;
    mesh.domain_area += area;

    const double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
    const double diam = std::max({la, lb, lc});
    mesh.h_max = std::max(mesh.h_max, diam);
    mesh.h_min = std::min(mesh.h_min, diam);

    const double s = 0.5 * (la + lb + lc);
    const double inradius = area / s;
    const double circumradius = la * lb * lc / (4.0 * area);
    mesh.shape_regularity =
        std::max(mesh.shape_regularity, circumradius / inradius);
  }

  // Edge extraction with cell adjacency. Within a positively oriented cell,
  // the local edge (v_i, v_j) is traversed counterclockwise, so the first
  // cell registering an edge sees it in its own CCW sense.
  std::map<std::pair<int, int>, int> edge_index;
  for (int t = 0; t < ncells; ++t) {
    const auto& cell = mesh.cells[t];
    for (int k = 0; k < 3; ++k) {
      const int a = cell[k], b = cell[(k + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        Edge e;
        e.v0 = a;
        e.v1 = b;
        e.cells = {t, -1};
        edge_index.emplace(key, mesh.num_edges());
        mesh.edges.push_back(e);
      } else {
        Edge& e = mesh.edges[it->second];
        if (e.cells[1] != -1)
          throw std::invalid_argument("make_trimesh: edge shared by >2 cells");
        e.cells[1] = t;
        e.kind = EdgeKind::Interior;
      }
    }
  }

  for (Edge& e : mesh.edges) {
    const Eigen::Vector2d& p0 = mesh.vertices[e.v0];
    const Eigen::Vector2d& p1 = mesh.vertices[e.v1];
    const Eigen::Vector2d tangent = p1 - p0;
    e.length = tangent.norm();
    // (v0, v1) follows cells[0]'s CCW boundary, so the right-hand rotation of
    // the tangent points out of cells[0]: into cells[1] for interior edges,
    // outward for boundary edges.
    e.normal = Eigen::Vector2d(tangent.y(), -tangent.x()) / e.length;
  }

  return mesh;
}

TriMesh build_structured(int nx, int ny, const Rect& bounds,
                         SplitPattern split) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("build_structured: nx, ny must be >= 1");
  if (!(bounds.width() > 0.0) || !(bounds.height() > 0.0))
    throw std::invalid_argument("build_structured: degenerate bounds");

  const double dx = bounds.width() / nx;
  const double dy = bounds.height() / ny;

  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> cells;

  auto grid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      vertices.emplace_back(bounds.x0 + i * dx, bounds.y0 + j * dy);

  if (split == SplitPattern::TwoTriangle) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int v00 = grid(i, j), v10 = grid(i + 1, j);
        const int v01 = grid(i, j + 1), v11 = grid(i + 1, j + 1);
        cells.push_back({v00, v10, v11});
        cells.push_back({v00, v11, v01});
      }
  } else {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int center = static_cast<int>(vertices.size());
        vertices.emplace_back(bounds.x0 + (i + 0.5) * dx,
                              bounds.y0 + (j + 0.5) * dy);
        const int v00 = grid(i, j), v10 = grid(i + 1, j);
        const int v01 = grid(i, j + 1), v11 = grid(i + 1, j + 1);
        cells.push_back({v00, v10, center});
        cells.push_back({v10, v11, center});
        cells.push_back({v11, v01, center});
        cells.push_back({v01, v00, center});
      }
  }

  return make_trimesh(std::move(vertices), std::move(cells));
}

int classify_edges(TriMesh& mesh,
                   const std::function<bool(const Eigen::Vector2d&)>& on_dirichlet) {
  int count = 0;
  for (Edge& e : mesh.edges) {
    if (!e.is_boundary()) continue;
    const Eigen::Vector2d mid =
        0.5 * (mesh.vertices[e.v0] + mesh.vertices[e.v1]);
    e.kind = on_dirichlet(mid) ? EdgeKind::Dirichlet : EdgeKind::Free;
    if (e.kind == EdgeKind::Dirichlet) ++count;
  }
  if (count == 0)
    std::cerr << "classify_edges: predicate selected no boundary edge\n";
  return count;
}

Eigen::Vector2d barycenter(const TriMesh& mesh, int cell) {
  return mesh.cell_barycenter.at(cell);
}

void dump_mesh(const TriMesh& mesh, std::ostream& os) {
  os << "vertices " << mesh.num_vertices() << "\n";
  for (const auto& v : mesh.vertices) os << v.x() << " " << v.y() << "\n";
  os << "cells " << mesh.num_cells() << "\n";
  for (const auto& c : mesh.cells) os << c[0] << " " << c[1] << " " << c[2] << "\n";
  os << "edges " << mesh.num_edges() << "\n";
  for (const Edge& e : mesh.edges) {
    const char* kind = e.kind == EdgeKind::Interior    ? "interior"
                       : e.kind == EdgeKind::Dirichlet ? "dirichlet"
                                                       : "free";
    os << e.v0 << " " << e.v1 << " " << kind << " cells " << e.cells[0] << " "
       << e.cells[1] << "\n";
  }
}

const std::array<TriQuadPoint, 6>& tri_quadrature_deg4() {
  // Two symmetric orbits; weights normalized to the reference measure 1/2.
  static const std::array<TriQuadPoint, 6> rule = [] {
    const double a1 = 0.445948490915965, w1 = 0.223381589678011 / 2.0;
    const double a2 = 0.091576213509771, w2 = 0.109951743655322 / 2.0;
    std::array<TriQuadPoint, 6> r;
    r[0] = {a1, a1, w1};
    r[1] = {1.0 - 2.0 * a1, a1, w1};
    r[2] = {a1, 1.0 - 2.0 * a1, w1};
    r[3] = {a2, a2, w2};
    r[4] = {1.0 - 2.0 * a2, a2, w2};
    r[5] = {a2, 1.0 - 2.0 * a2, w2};
    return r;
  }();
  return rule;
}

const std::array<SegQuadPoint, 3>& seg_quadrature_deg5() {
  static const std::array<SegQuadPoint, 3> rule = [] {
    const double offset = 0.5 * std::sqrt(3.0 / 5.0);
    std::array<SegQuadPoint, 3> r;
    r[0] = {0.5 - offset, 5.0 / 18.0};
    r[1] = {0.5, 8.0 / 18.0};
    r[2] = {0.5 + offset, 5.0 / 18.0};
    return r;
  }();
  return rule;
}

}  // namespace isoplate
