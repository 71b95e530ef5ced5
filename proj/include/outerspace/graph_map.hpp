#pragma once

#include <span>
#include <vector>

#include "outerspace/marked_graph.hpp"
#include "outerspace/metric.hpp"

namespace outerspace {

/// Vertex-to-vertex map between graphs; each edge goes to a reduced edge
/// path (empty only for collapsed edges). Images are stored for the forward
/// orientation; the reversed edge maps to the reversed path.
struct GraphMap {
  Graph domain;
  Graph codomain;
  std::vector<int> vertex_image;
  std::vector<std::vector<OrientedEdge>> edge_image;
  bool self_map = false;

  std::vector<OrientedEdge> image(OrientedEdge o) const;

  /// Image of a path: tightened rel endpoints for open paths, cyclically
  /// reduced for loops.
  EdgePath image_of(const EdgePath& p) const;

  /// Image of a path without tightening.
  std::vector<OrientedEdge> raw_image(std::span<const OrientedEdge> p) const;
};

/// Throws DomainError when edge images are malformed or disagree with the
/// vertex map at their endpoints.
void check_map(const GraphMap& m);

/// (marking of y) ∘ (inverse marking of x): every vertex goes to the base of
/// y and edge e to f_y(g_x(e)), reduced.
GraphMap difference_of_markings(const MarkedGraph& x, const MarkedGraph& y);

/// Self-map e ↦ f(phi(g(e))) representing phi on a marked graph. On the rose
/// with the identity marking this is x_i ↦ phi(x_i).
GraphMap representative_map(const MarkedGraph& x, const Automorphism& phi);

/// m∘f_x is freely homotopic to f_y with one common conjugator.
bool is_marking_compatible(const GraphMap& m, const MarkedGraph& x, const MarkedGraph& y);

/// m∘f ≃ f∘phi up to one common conjugator, checked through phi^{-1}.
bool represents(const GraphMap& m, const MarkedGraph& x, const Automorphism& phi_inverse);

template <class Scalar>
struct Slopes {
  std::vector<Scalar> slope;
  Scalar sigma_max;
  std::vector<int> degenerate;  // edges with empty image
};

template <class Scalar>
Slopes<Scalar> slopes(const GraphMap& m, const Metric<Scalar>& domain, const Metric<Scalar>& codomain) {
  Slopes<Scalar> out{{}, Scalar(0), {}};
  for (int e = 0; e < m.domain.num_edges(); ++e) {
    const auto& img = m.edge_image[static_cast<std::size_t>(e)];
    if (img.empty()) out.degenerate.push_back(e);
    Scalar s = codomain.length(img) / domain[e];
    if (e == 0 || s > out.sigma_max) out.sigma_max = s;
    out.slope.push_back(std::move(s));
  }
  return out;
}

/// Edges whose slope equals the maximal slope (relative tolerance kTolerance
/// for floating metrics, exact for rationals).
template <class Scalar>
EdgeSet tension_subgraph(const GraphMap& m, const Metric<Scalar>& domain, const Metric<Scalar>& codomain,
                         double tol = kTolerance) {
  const Slopes<Scalar> s = slopes(m, domain, codomain);
  EdgeSet out;
  for (int e = 0; e < m.domain.num_edges(); ++e) {
    if (approx_equal(s.slope[static_cast<std::size_t>(e)], s.sigma_max, tol)) out.push_back(e);
  }
  return out;
}

/// First edge of the image of d. Throws UndefinedDerivativeError when the
/// image is empty.
Direction derivative(const GraphMap& m, Direction d);

/// Partition of the directions of a designated edge subset into gates.
/// Directions of other edges are not designated.
class TrainTrackStructure {
 public:
  TrainTrackStructure() = default;

  /// `gate_key` assigns each designated direction a key (undesignated: -1);
  /// directions at one vertex with equal keys share a gate.
  TrainTrackStructure(const Graph& g, std::span<const int> gate_key);

  bool designated(Direction d) const { return gate_[static_cast<std::size_t>(d.code())] >= 0; }

  /// Least direction code of the gate of d, or -1.
  int gate(Direction d) const { return gate_[static_cast<std::size_t>(d.code())]; }

  bool same_gate(Direction a, Direction b) const;

  /// Legal iff the two directions are designated and in different gates.
  bool is_legal(const Turn& t) const;

  std::vector<std::vector<Direction>> gates_at(int v) const;

  /// All gates, each sorted, ordered by least element.
  std::vector<std::vector<Direction>> gates() const;

  int num_gates(int v) const;

  /// Σ over vertices of max(0, G(v) − 2).
  int excess_gates() const;

  friend bool operator==(const TrainTrackStructure&, const TrainTrackStructure&) = default;

 private:
  std::vector<int> gate_;
  std::vector<int> vertex_;
  int num_vertices_ = 0;
};

/// d ~ d' iff derivative(d) = derivative(d').
TrainTrackStructure gates_one_step(const GraphMap& m, const EdgeSet& subset);

/// d ~ d' iff some iterate of the derivative agrees on them. Self-maps only.
TrainTrackStructure gates_iterated(const GraphMap& m, const EdgeSet& subset);

/// The derivative iterated `steps` times, on every direction code.
std::vector<int> iterated_derivative(const GraphMap& m, int steps);

bool is_legal(const EdgePath& p, const TrainTrackStructure& s);

/// Legal loop in the subset crossing each edge at most twice: extend legally
/// (least direction first) until an oriented edge repeats. Throws
/// PreconditionError at a vertex with fewer than two gates.
EdgePath find_legal_loop(const Graph& g, const EdgeSet& subset, const TrainTrackStructure& s);

}  // namespace outerspace
