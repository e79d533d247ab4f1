#include "formation/graph.hpp"

#include <algorithm>
#include <string>

namespace formation {

int FormationGraph::index_of(int node_id) const {
  const auto it = std::find(node_ids.begin(), node_ids.end(), node_id);
  return it == node_ids.end() ? -1 : static_cast<int>(it - node_ids.begin());
}

int FormationGraph::find_edge(int a, int b) const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& [tail, head] = edges[e];
    if ((tail == a && head == b) || (tail == b && head == a)) return static_cast<int>(e);
  }
  return -1;
}

FormationGraph build_triangulated_laman(std::pair<int, int> seed,
                                        const std::vector<Attachment>& attachments) {
  if (seed.first == seed.second) {
    throw InvalidAttachment("seed edge must join two distinct nodes");
  }
  FormationGraph g;
  g.node_ids = {seed.first, seed.second};
  g.edges.emplace_back(0, 1);

  for (const auto& att : attachments) {
    const std::string where =
        "attachment (" + std::to_string(att.new_node) + ", " + std::to_string(att.anchor_a) +
        ", " + std::to_string(att.anchor_b) + ")";
    if (att.anchor_a == att.anchor_b) {
      throw InvalidAttachment(where + ": anchors must be distinct");
    }
    if (att.new_node == att.anchor_a || att.new_node == att.anchor_b) {
      throw InvalidAttachment(where + ": node cannot anchor to itself");
    }
    if (g.index_of(att.new_node) >= 0) {
      throw InvalidAttachment(where + ": node " + std::to_string(att.new_node) +
                              " already exists");
    }
    const int a = g.index_of(att.anchor_a);
    const int b = g.index_of(att.anchor_b);
    if (a < 0 || b < 0) {
      throw InvalidAttachment(where + ": both anchors must already be present");
    }
    const int anchor_edge = g.find_edge(a, b);
    if (anchor_edge < 0) {
      throw InvalidAttachment(where + ": anchors are not adjacent");
    }

    const int c = g.node_count();
    g.node_ids.push_back(att.new_node);
    const int edge_j = g.edge_count();
    g.edges.emplace_back(a, c);
    const int edge_i = g.edge_count();
    g.edges.emplace_back(b, c);

    Triangle tri;
    tri.vertices = {a, b, c};
    tri.edge_k = anchor_edge;
    tri.edge_j = edge_j;
    tri.edge_i = edge_i;
    g.triangles.push_back(tri);
  }
  return g;
}

IncidenceMatrix incidence_matrix(const FormationGraph& g) {
  IncidenceMatrix m;
  m.nodes = static_cast<std::size_t>(g.node_count());
  m.edge_count = static_cast<std::size_t>(g.edge_count());
  m.entries.assign(m.nodes * m.edge_count, 0);
  for (std::size_t e = 0; e < m.edge_count; ++e) {
    const auto& [tail, head] = g.edges[e];
    m.entries[static_cast<std::size_t>(tail) * m.edge_count + e] = -1;
    m.entries[static_cast<std::size_t>(head) * m.edge_count + e] = +1;
  }
  return m;
}

namespace {

TriangleGeometry triangle_geometry(const FormationGraph& g, std::span<const Vec2> positions,
                                   const Triangle& tri) {
  (void)g;
  return TriangleGeometry::from_positions(positions[tri.vertices[0]], positions[tri.vertices[1]],
                                          positions[tri.vertices[2]]);
}

void place_rows(Matrix& out, std::size_t l, const Triangle& tri, const AngleJacobians& rows) {
  for (int role = 0; role < 3; ++role) {
    const auto col = static_cast<std::size_t>(2 * tri.vertices[role]);
    out(2 * l, col) = rows.theta[role].x;
    out(2 * l, col + 1) = rows.theta[role].y;
    out(2 * l + 1, col) = rows.phi[role].x;
    out(2 * l + 1, col + 1) = rows.phi[role].y;
  }
}

}  // namespace

Matrix assemble_global_jacobian(const FormationGraph& g, std::span<const Vec2> positions) {
  Matrix out(2 * static_cast<std::size_t>(g.triangle_count()),
             2 * static_cast<std::size_t>(g.node_count()));
  for (std::size_t l = 0; l < g.triangles.size(); ++l) {
    const auto geom = triangle_geometry(g, positions, g.triangles[l]);
    place_rows(out, l, g.triangles[l], true_angle_jacobians(geom));
  }
  return out;
}

Matrix assemble_global_jacobian(const FormationGraph& g, std::span<const Vec2> positions,
                                std::span<const TriangleDistanceEstimates> estimates) {
  Matrix out(2 * static_cast<std::size_t>(g.triangle_count()),
             2 * static_cast<std::size_t>(g.node_count()));
  for (std::size_t l = 0; l < g.triangles.size(); ++l) {
    const auto geom = triangle_geometry(g, positions, g.triangles[l]);
    place_rows(out, l, g.triangles[l], estimated_angle_jacobians(geom, estimates[l]));
  }
  return out;
}

Matrix stacked_triangle_jacobian(const AngleJacobians& rows) {
  Matrix m(6, 2);
  for (std::size_t role = 0; role < 3; ++role) {
    m(2 * role, 0) = rows.theta[role].x;
    m(2 * role + 1, 0) = rows.theta[role].y;
    m(2 * role, 1) = rows.phi[role].x;
    m(2 * role + 1, 1) = rows.phi[role].y;
  }
  return m;
}

double triangle_rank_audit(const Matrix& six_by_two) {
  return min_singular_value_two_columns(six_by_two);
}

double triangle_rank_audit(const AngleJacobians& rows) {
  return min_singular_value_two_columns(stacked_triangle_jacobian(rows));
}

}  // namespace formation
