#include "wgbh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

namespace wgbh {

namespace {

double signed_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

/// Builds edges, adjacency, boundary flags and size metrics from vertex and
/// triangle lists. The lists must already be CCW-ordered.
void build_topology(Mesh& m) {
  const int nt = m.num_triangles();
  m.edges.clear();
  m.tri_edges.assign(nt, {});
  m.edge_tris.clear();

  std::unordered_map<std::uint64_t, int> edge_index;
  edge_index.reserve(static_cast<std::size_t>(3 * nt));
  for (int t = 0; t < nt; ++t) {
    const auto& tri = m.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[(k + 1) % 3];
      const int b = tri[(k + 2) % 3];
      const int lo = std::min(a, b);
      const int hi = std::max(a, b);
      const std::uint64_t key =
          (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint64_t>(hi);
      auto [it, inserted] = edge_index.try_emplace(key, m.num_edges());
      if (inserted) {
        m.edges.push_back({lo, hi});
        m.edge_tris.push_back({t, -1});
      } else {
        auto& adj = m.edge_tris[static_cast<std::size_t>(it->second)];
        if (adj[1] != -1)
          throw TopologyError("edge " + std::to_string(it->second) +
                              " shared by more than two triangles");
        adj[1] = t;
      }
      // CCW traversal a->b matches the stored lo->hi direction exactly when
      // the outward normal equals the global edge normal.
      m.tri_edges[t][k] = {it->second, a == lo ? +1 : -1};
    }
  }

  m.boundary_edge.resize(m.edges.size());
  for (int e = 0; e < m.num_edges(); ++e)
    m.boundary_edge[e] = m.edge_tris[e][1] == -1 ? 1 : 0;

  m.h_per_tri.resize(nt);
  m.area_per_tri.resize(nt);
  m.h = 0.0;
  for (int t = 0; t < nt; ++t) {
    const auto p = m.tri_points(t);
    const double a2 = signed_area2(p[0], p[1], p[2]);
    if (a2 <= 0.0)
      throw TopologyError("triangle " + std::to_string(t) +
                          " has non-positive area");
    m.area_per_tri[t] = 0.5 * a2;
    const double d = std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(),
                               (p[0] - p[2]).norm()});
    m.h_per_tri[t] = d;
    m.h = std::max(m.h, d);
  }
}

double uniform01(std::mt19937_64& rng) {
  // Fixed mapping instead of std::uniform_real_distribution so streams are
  // identical across standard library implementations.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

int Mesh::num_boundary_edges() const {
  int n = 0;
  for (auto b : boundary_edge) n += b;
  return n;
}

std::array<Vec2, 3> Mesh::tri_points(int t) const {
  const auto& tri = triangles[static_cast<std::size_t>(t)];
  return {vertices[static_cast<std::size_t>(tri[0])],
          vertices[static_cast<std::size_t>(tri[1])],
          vertices[static_cast<std::size_t>(tri[2])]};
}

Vec2 Mesh::centroid(int t) const {
  const auto p = tri_points(t);
  return (p[0] + p[1] + p[2]) / 3.0;
}

double Mesh::edge_length(int e) const {
  const auto p = edge_points(e);
  return (p[1] - p[0]).norm();
}

Vec2 Mesh::edge_normal(int e) const {
  const auto p = edge_points(e);
  const Vec2 d = (p[1] - p[0]).normalized();
  return {d.y(), -d.x()};
}

std::array<Vec2, 2> Mesh::edge_points(int e) const {
  const auto& ed = edges[static_cast<std::size_t>(e)];
  return {vertices[static_cast<std::size_t>(ed[0])],
          vertices[static_cast<std::size_t>(ed[1])]};
}

Vec2 Mesh::edge_point(int e, double t) const {
  const auto p = edge_points(e);
  return p[0] + t * (p[1] - p[0]);
}

Mesh generate_unit_square(int n, double jitter, unsigned seed) {
  if (n < 1) throw InvalidArgument("generate_unit_square: n must be >= 1");
  if (jitter < 0.0 || jitter > 0.3)
    throw InvalidArgument("generate_unit_square: jitter must be in [0, 0.3]");

  Mesh m;
  const int nv1 = n + 1;
  m.vertices.resize(static_cast<std::size_t>(nv1) * nv1);
  std::mt19937_64 rng(seed);
  for (int j = 0; j < nv1; ++j) {
    for (int i = 0; i < nv1; ++i) {
      Vec2 p(static_cast<double>(i) / n, static_cast<double>(j) / n);
      const bool interior = i > 0 && i < n && j > 0 && j < n;
      if (interior && jitter > 0.0) {
        // Displacement bounded by jitter/n in Euclidean norm; with
        // jitter <= 0.3 no triangle of the structured split can degenerate.
        const double angle = 2.0 * M_PI * uniform01(rng);
        const double radius = jitter / n * uniform01(rng);
        p += radius * Vec2(std::cos(angle), std::sin(angle));
      }
      m.vertices[static_cast<std::size_t>(j) * nv1 + i] = p;
    }
  }

  m.triangles.reserve(static_cast<std::size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * nv1 + i;
      const int b = j * nv1 + i + 1;
      const int c = (j + 1) * nv1 + i + 1;
      const int d = (j + 1) * nv1 + i;
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
    }
  }
  build_topology(m);
  return m;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh fine;
  fine.vertices = mesh.vertices;
  fine.vertices.resize(mesh.vertices.size() + mesh.edges.size());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto p = mesh.edge_points(e);
    fine.vertices[mesh.vertices.size() + static_cast<std::size_t>(e)] =
        0.5 * (p[0] + p[1]);
  }

  const int nv = mesh.num_vertices();
  fine.triangles.reserve(static_cast<std::size_t>(4) * mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    // Midpoint opposite vertex k sits on local edge k.
    const int m0 = nv + mesh.tri_edges[static_cast<std::size_t>(t)][0].edge;
    const int m1 = nv + mesh.tri_edges[static_cast<std::size_t>(t)][1].edge;
    const int m2 = nv + mesh.tri_edges[static_cast<std::size_t>(t)][2].edge;
    fine.triangles.push_back({tri[0], m2, m1});
    fine.triangles.push_back({tri[1], m0, m2});
    fine.triangles.push_back({tri[2], m1, m0});
    fine.triangles.push_back({m0, m1, m2});
  }
  build_topology(fine);
  return fine;
}

namespace {

struct LineReader {
  std::istringstream in;
  std::string line;
  int line_no = 0;
  std::string label;

  LineReader(std::string_view text, std::string label_)
      : in(std::string(text)), label(std::move(label_)) {}

  /// Next non-empty line with '#' comments stripped; false at end of input.
  bool next(std::istringstream& fields) {
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto pos = line.find('#'); pos != std::string::npos)
        line.erase(pos);
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok) {
        fields = std::istringstream(line);
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(label + " line " + std::to_string(line_no) + ": " + what);
  }
};

}  // namespace

Mesh load_mesh(std::string_view node_text, std::string_view ele_text,
               const MeshLoadOptions& options) {
  Mesh m;

  LineReader nodes(node_text, "node file");
  std::istringstream fields;
  if (!nodes.next(fields)) throw ParseError("node file is empty");
  long n_vertices = 0;
  int dim = 0, n_attr = 0, marker_flag = 0;
  if (!(fields >> n_vertices >> dim >> n_attr >> marker_flag) || n_vertices < 3 ||
      dim != 2 || n_attr != 0 || (marker_flag != 0 && marker_flag != 1))
    nodes.fail("expected header '<#vertices> 2 0 <0|1>'");

  m.vertices.resize(static_cast<std::size_t>(n_vertices));
  std::vector<bool> seen(static_cast<std::size_t>(n_vertices), false);
  for (long i = 0; i < n_vertices; ++i) {
    if (!nodes.next(fields)) nodes.fail("unexpected end of vertex list");
    long index = 0;
    double x = 0.0, y = 0.0;
    if (!(fields >> index >> x >> y)) nodes.fail("malformed vertex line");
    if (index < 1 || index > n_vertices)
      nodes.fail("vertex index " + std::to_string(index) + " out of range");
    if (seen[static_cast<std::size_t>(index - 1)])
      nodes.fail("duplicate vertex index " + std::to_string(index));
    seen[static_cast<std::size_t>(index - 1)] = true;
    m.vertices[static_cast<std::size_t>(index - 1)] = Vec2(x, y);
  }

  LineReader eles(ele_text, "ele file");
  if (!eles.next(fields)) throw ParseError("ele file is empty");
  long n_triangles = 0;
  int nodes_per_tri = 0;
  n_attr = 0;
  if (!(fields >> n_triangles >> nodes_per_tri >> n_attr) || n_triangles < 1 ||
      nodes_per_tri != 3 || n_attr != 0)
    eles.fail("expected header '<#triangles> 3 0'");

  m.triangles.resize(static_cast<std::size_t>(n_triangles));
  std::vector<bool> seen_tri(static_cast<std::size_t>(n_triangles), false);
  std::map<std::array<int, 3>, long> canonical;
  for (long i = 0; i < n_triangles; ++i) {
    if (!eles.next(fields)) eles.fail("unexpected end of triangle list");
    long index = 0;
    std::array<long, 3> v{};
    if (!(fields >> index >> v[0] >> v[1] >> v[2]))
      eles.fail("malformed triangle line");
    if (index < 1 || index > n_triangles)
      eles.fail("triangle index " + std::to_string(index) + " out of range");
    if (seen_tri[static_cast<std::size_t>(index - 1)])
      eles.fail("duplicate triangle index " + std::to_string(index));
    seen_tri[static_cast<std::size_t>(index - 1)] = true;

    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      if (v[k] < 1 || v[k] > n_vertices)
        throw TopologyError("ele file line " + std::to_string(eles.line_no) +
                            ": vertex index " + std::to_string(v[k]) +
                            " out of range");
      tri[k] = static_cast<int>(v[k] - 1);
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw TopologyError("ele file line " + std::to_string(eles.line_no) +
                          ": repeated vertex in triangle");

    const double a2 = signed_area2(m.vertices[static_cast<std::size_t>(tri[0])],
                                   m.vertices[static_cast<std::size_t>(tri[1])],
                                   m.vertices[static_cast<std::size_t>(tri[2])]);
    if (a2 == 0.0)
      throw TopologyError("ele file line " + std::to_string(eles.line_no) +
                          ": degenerate triangle");
    if (a2 < 0.0) {
      if (!options.fix_orientation)
        throw TopologyError("ele file line " + std::to_string(eles.line_no) +
                            ": clockwise triangle (fix_orientation disabled)");
      std::swap(tri[1], tri[2]);
    }

    std::array<int, 3> key = tri;
    std::sort(key.begin(), key.end());
    if (!canonical.emplace(key, index).second)
      throw TopologyError("ele file line " + std::to_string(eles.line_no) +
                          ": duplicate triangle");
    m.triangles[static_cast<std::size_t>(index - 1)] = tri;
  }

  build_topology(m);
  validate_mesh(m, /*geometric_checks=*/true);
  return m;
}

void validate_mesh(const Mesh& m, bool geometric_checks) {
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto p = m.tri_points(t);
    if (signed_area2(p[0], p[1], p[2]) <= 0.0)
      throw TopologyError("triangle " + std::to_string(t) +
                          " has non-positive area");
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const bool boundary = m.boundary_edge[static_cast<std::size_t>(e)] != 0;
    const auto& adj = m.edge_tris[static_cast<std::size_t>(e)];
    if (boundary != (adj[1] == -1))
      throw TopologyError("edge " + std::to_string(e) +
                          " has inconsistent boundary flag");
  }

  // Euler relation for a simply connected triangulated polygon.
  const long euler = static_cast<long>(m.num_vertices()) - m.num_edges() +
                     (static_cast<long>(m.num_triangles()) + 1);
  if (euler != 2)
    throw TopologyError("Euler relation violated (V - E + T + 1 = " +
                        std::to_string(euler) + ", expected 2)");

  if (!geometric_checks) return;

  // Hanging-node scan: no vertex may sit strictly inside a boundary edge.
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.boundary_edge[static_cast<std::size_t>(e)]) continue;
    const auto p = m.edge_points(e);
    const Vec2 d = p[1] - p[0];
    const double len2 = d.squaredNorm();
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (v == m.edges[static_cast<std::size_t>(e)][0] ||
          v == m.edges[static_cast<std::size_t>(e)][1])
        continue;
      const Vec2 r = m.vertices[static_cast<std::size_t>(v)] - p[0];
      const double s = r.dot(d) / len2;
      if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
      const double dist2 = (r - s * d).squaredNorm();
      if (dist2 < 1e-24 * len2)
        throw TopologyError("hanging node: vertex " + std::to_string(v) +
                            " lies inside boundary edge " + std::to_string(e));
    }
  }
}

}  // namespace wgbh
