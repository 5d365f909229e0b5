#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wgbh/errors.hpp"

namespace wgbh {

using Vec2 = Eigen::Vector2d;

/// Conforming triangulation of a polygonal domain with full edge topology.
///
/// Conventions:
///  - triangles are counter-clockwise;
///  - every edge is stored as (v0, v1) with v0 < v1, and its global unit
///    normal is the direction (v1 - v0) rotated by -90 degrees;
///  - per triangle, local edge k is the edge opposite local vertex k, and
///    `sign` is +1 when the global edge normal coincides with the outward
///    normal of the triangle on that edge, -1 otherwise.
///
/// The struct is immutable after construction and safe to share across
/// threads read-only.
struct Mesh {
  struct TriEdge {
    int edge = -1;
    int sign = 0;
  };

  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<TriEdge, 3>> tri_edges;
  std::vector<std::array<int, 2>> edge_tris;  // second entry -1 on the boundary
  std::vector<std::uint8_t> boundary_edge;
  std::vector<double> h_per_tri;
  std::vector<double> area_per_tri;
  double h = 0.0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_boundary_edges() const;

  std::array<Vec2, 3> tri_points(int t) const;
  Vec2 centroid(int t) const;
  double edge_length(int e) const;
  /// Global unit normal of edge e (fixed by the lower-to-higher vertex rule).
  Vec2 edge_normal(int e) const;
  /// Endpoints of edge e in global orientation (lower vertex index first).
  std::array<Vec2, 2> edge_points(int e) const;
  /// Point on edge e at arclength parameter t in [0, 1] (global orientation).
  Vec2 edge_point(int e, double t) const;
};

/// Structured mesh of [0,1]^2 with 2*n^2 triangles; every grid cell is split
/// along the same diagonal. Interior vertices are displaced by at most
/// jitter/n (Euclidean), deterministically from `seed`; boundary vertices
/// never move.
Mesh generate_unit_square(int n, double jitter = 0.0, unsigned seed = 0);

/// Red refinement: each triangle is split into four via edge midpoints.
/// Child diameters are exactly half the parent diameter.
Mesh refine_uniform(const Mesh& mesh);

struct MeshLoadOptions {
  /// Reorder clockwise triangles instead of rejecting them.
  bool fix_orientation = true;
};

/// Parse a mesh from node/ele text (see README for the format). All topology
/// (edges, adjacency, boundary flags) is derived from the triangle list;
/// boundary markers in the file are ignored.
Mesh load_mesh(std::string_view node_text, std::string_view ele_text,
               const MeshLoadOptions& options = {});

/// Check the structural invariants (positive areas, 2/1 edge sharing, Euler
/// relation, conforming boundary). Throws TopologyError on violation.
void validate_mesh(const Mesh& mesh, bool geometric_checks = false);

}  // namespace wgbh
