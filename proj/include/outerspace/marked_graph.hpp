#pragma once

#include <span>
#include <string>
#include <vector>

#include "outerspace/automorphism.hpp"
#include "outerspace/graph.hpp"

namespace outerspace {

/// A graph with a marking f: R_n -> graph and a homotopy inverse g.
/// The marking sends generator i to a loop based at `base`, reduced rel
/// endpoints; the inverse marking sends each edge to a word.
struct MarkedGraph {
  Graph graph;
  int base = 0;
  std::vector<EdgePath> marking;
  std::vector<Word> inverse_marking;

  int rank() const { return static_cast<int>(marking.size()); }
};

int betti_number(const Graph& g);

/// The rose R_n with the identity marking.
MarkedGraph rose_marked_graph(int rank);

/// Marking read off a breadth-first spanning tree rooted at `base`:
/// generator j goes out along the tree, across the j-th non-tree edge, and
/// back. The inverse marking is exact (g∘f is the identity on words).
MarkedGraph spanning_tree_marking(const Graph& g, int base = 0);

/// Inverse marking recomputed from a marking by expressing each marking loop
/// in the spanning-tree basis and inverting that basis map. Throws
/// MarkingIntegrityError when the marking is not a homotopy equivalence.
std::vector<Word> compute_inverse_marking(const Graph& g, int base,
                                          std::span<const EdgePath> marking);

/// f(word), reduced rel the base vertex.
EdgePath apply_marking(const MarkedGraph& mg, std::span<const Letter> word);

/// g(path), freely reduced.
Word apply_inverse_marking(const MarkedGraph& mg, std::span<const OrientedEdge> path);

/// Throws MarkingIntegrityError unless the marking loops are based at `base`,
/// the rank matches H_1 of the graph, and g∘f(x_i) = c x_i c^{-1} for one c.
void validate_marking(const MarkedGraph& mg);

/// Combinatorial map q from a source graph onto `target` sending edges to
/// edge paths, together with a section s (target edge -> source path) with
/// q∘s homotopic to the identity. Every move applied to graphs (collapse,
/// unsubdivision, fold, subdivision) is one of these.
struct GraphQuotient {
  Graph target;
  std::vector<std::vector<OrientedEdge>> edge_map;  // per source edge, forward orientation
  std::vector<int> vertex_map;                      // per source vertex
  std::vector<std::vector<OrientedEdge>> section;   // per target edge, forward orientation

  std::vector<OrientedEdge> image(OrientedEdge o) const;

  /// q(path), freely reduced.
  std::vector<OrientedEdge> push(std::span<const OrientedEdge> path) const;
};

/// Contracts a forest. Throws RankCollapseError if the subset has a cycle.
GraphQuotient collapse_edges(const Graph& g, const EdgeSet& forest);

/// Merges the two edges at a valence-2 vertex into one edge, keeping the
/// lower edge id and its orientation. `collapsed_edge` (default: the edge of
/// the second direction at the vertex) is the side q sends to a point; the
/// other side maps onto the merged edge. Throws DomainError when the vertex
/// is not of valence 2 or carries a single loop (the graph is a circle).
GraphQuotient unsubdivide_at(const Graph& g, int vertex, int collapsed_edge = -1);

/// Identifies two edges leaving a common vertex; the head of `drop` is glued
/// to the head of `keep`. Throws RankCollapseError when the heads coincide.
GraphQuotient identify_edges(const Graph& g, Direction keep, Direction drop);

/// Splits edges into pieces. `pieces[e]` (0 or 1 meaning untouched) is the
/// number of pieces of edge e; piece 0 keeps the id and name of e, the others
/// are appended with fresh names of the form `e<k>`. The section is empty.
GraphQuotient subdivide(const Graph& g, std::span<const int> pieces, int& name_counter);

/// Pushes marking through q and recomputes the inverse marking.
MarkedGraph push_marking(const MarkedGraph& mg, const GraphQuotient& q);

/// Fresh edge name "e<k>" not used in g.
std::string fresh_edge_name(const Graph& g, int& counter);

}  // namespace outerspace
