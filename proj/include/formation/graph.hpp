#pragma once

#include <span>
#include <utility>
#include <vector>

#include "formation/errors.hpp"
#include "formation/geometry.hpp"
#include "formation/linalg.hpp"

namespace formation {

// Desired angles must stay this far from 0 and pi (radians).
inline constexpr double kAngleMargin = 0.1;

// One triangle of the graph. `vertices` are internal node indices in role
// order (role 1 carries theta, role 3 carries phi); edge k joins roles 1-2,
// j joins 1-3, i joins 2-3. Desired angles are in radians.
struct Triangle {
  std::array<int, 3> vertices;
  int edge_i, edge_j, edge_k;
  double theta_star{0.0};
  double phi_star{0.0};
};

struct Attachment {
  int new_node;
  int anchor_a;
  int anchor_b;
};

// Triangulated Laman graph: built from a seed edge by repeatedly attaching a
// new node to two adjacent existing nodes. Immutable after construction.
struct FormationGraph {
  std::vector<int> node_ids;                  // external ids, insertion order
  std::vector<std::pair<int, int>> edges;     // (tail, head) internal indices
  std::vector<Triangle> triangles;

  [[nodiscard]] int node_count() const { return static_cast<int>(node_ids.size()); }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges.size()); }
  [[nodiscard]] int triangle_count() const { return static_cast<int>(triangles.size()); }

  // Internal index of an external node id; -1 if absent.
  [[nodiscard]] int index_of(int node_id) const;
  // Edge index joining two internal node indices, either orientation; -1 if absent.
  [[nodiscard]] int find_edge(int a, int b) const;
};

// Builds the graph. Each attachment must name a fresh node and two distinct,
// existing, mutually adjacent anchors; the new triangle takes roles
// (anchor_a, anchor_b, new_node). Throws InvalidAttachment otherwise.
FormationGraph build_triangulated_laman(std::pair<int, int> seed,
                                        const std::vector<Attachment>& attachments);

// Node-by-edge incidence matrix with entries in {-1, 0, +1}; +1 marks the
// head of the stored orientation.
struct IncidenceMatrix {
  std::size_t nodes{0};
  std::size_t edge_count{0};
  std::vector<int> entries;  // row-major

  int operator()(std::size_t node, std::size_t edge) const {
    return entries[node * edge_count + edge];
  }
};

IncidenceMatrix incidence_matrix(const FormationGraph& g);

// Stacks all 2M angle Jacobian rows into a 2M x 2N matrix: row pair
// (2l, 2l+1) holds triangle l's theta and phi rows, placed in the columns of
// the triangle's three agents. True distances.
Matrix assemble_global_jacobian(const FormationGraph& g, std::span<const Vec2> positions);

// Same, with each triangle's Jacobians built from the given estimates.
Matrix assemble_global_jacobian(const FormationGraph& g, std::span<const Vec2> positions,
                                std::span<const TriangleDistanceEstimates> estimates);

// The per-triangle 6x2 matrix of Lemma form: agent-blocks of the transposed
// theta/phi rows. Full column rank iff its smallest singular value is > 0.
Matrix stacked_triangle_jacobian(const AngleJacobians& rows);

// Smallest singular value of a stacked 6x2 triangle Jacobian.
double triangle_rank_audit(const Matrix& six_by_two);
double triangle_rank_audit(const AngleJacobians& rows);

}  // namespace formation
