#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace isoplate {

enum class EdgeKind { Interior, Dirichlet, Free };
enum class SplitPattern { TwoTriangle, Crisscross };

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

struct Edge {
  int v0 = -1, v1 = -1;
  EdgeKind kind = EdgeKind::Free;
  // Interior edges: unit normal pointing from cells[0] into cells[1].
  // Boundary edges: outward unit normal of the domain.
  Eigen::Vector2d normal = Eigen::Vector2d::Zero();
  double length = 0.0;
  std::array<int, 2> cells = {-1, -1};

  bool is_boundary() const { return cells[1] < 0; }
  bool in_skeleton() const { return kind != EdgeKind::Free; }
};

/// Conforming triangulation of a polygonal domain with classified edges.
/// Cells are positively oriented; interior edges are shared by exactly two
/// cells. Immutable after construction except for edge classification.
struct TriMesh {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> cells;
  std::vector<Edge> edges;

  std::vector<double> cell_area;
  std::vector<Eigen::Vector2d> cell_barycenter;

  double h_max = 0.0;
  double h_min = 0.0;
  double shape_regularity = 0.0;  // max over cells of circumradius/inradius
  double domain_area = 0.0;

  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_dirichlet_edges() const;
};

/// Builds a mesh from raw vertex/cell lists: orients cells positively,
/// extracts edges with adjacency, fixes normal orientations, computes
/// areas/barycenters/size metrics. Boundary edges start out Free.
TriMesh make_trimesh(std::vector<Eigen::Vector2d> vertices,
                     std::vector<std::array<int, 3>> cells);

/// Structured triangulation of an axis-aligned rectangle. Crisscross splits
/// each of the nx*ny rectangles into 4 triangles about its center
/// (4*nx*ny cells); TwoTriangle splits along one diagonal (2*nx*ny cells).
TriMesh build_structured(int nx, int ny, const Rect& bounds,
                         SplitPattern split);

/// Marks every boundary edge whose midpoint satisfies the predicate as
/// Dirichlet and all remaining boundary edges as Free. Interior edges are
/// untouched. Returns the number of Dirichlet edges; warns on stderr when
/// the predicate selects nothing.
int classify_edges(TriMesh& mesh,
                   const std::function<bool(const Eigen::Vector2d&)>& on_dirichlet);

Eigen::Vector2d barycenter(const TriMesh& mesh, int cell);

/// Plain-text vertex/cell/edge listing for debugging.
void dump_mesh(const TriMesh& mesh, std::ostream& os);

// Reference quadrature. Triangle rule on {(xi,eta): xi,eta>=0, xi+eta<=1}
// (weights sum to 1/2), segment rule on [0,1] (weights sum to 1).
struct TriQuadPoint {
  double xi, eta, w;
};
struct SegQuadPoint {
  double s, w;
};

/// Degree-4 exact, 6 points.
const std::array<TriQuadPoint, 6>& tri_quadrature_deg4();
/// Degree-5 exact, 3 points.
const std::array<SegQuadPoint, 3>& seg_quadrature_deg5();

}  // namespace isoplate
