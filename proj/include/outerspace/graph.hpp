#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace outerspace {

/// An unoriented edge id together with an orientation. Encoded as
/// `2 * edge + reversed`, so the natural order is a < ā < b < b̄ < ...
/// The same type doubles as a letter of the free group: generator x_i is the
/// forward petal i of the rose.
class OrientedEdge {
 public:
  constexpr OrientedEdge() = default;
  constexpr OrientedEdge(int edge, bool reversed) : code_(2 * edge + (reversed ? 1 : 0)) {}

  static constexpr OrientedEdge from_code(int code) {
    OrientedEdge o;
    o.code_ = code;
    return o;
  }

  constexpr int edge() const { return code_ >> 1; }
  constexpr bool reversed() const { return (code_ & 1) != 0; }
  constexpr int code() const { return code_; }
  constexpr OrientedEdge inverse() const { return from_code(code_ ^ 1); }

  constexpr auto operator<=>(const OrientedEdge&) const = default;

 private:
  int code_ = 0;
};

/// A direction is the germ of an oriented edge at its initial vertex.
using Direction = OrientedEdge;
using Letter = OrientedEdge;

/// Sorted list of unoriented edge ids.
using EdgeSet = std::vector<int>;

/// Finite graph with stable integer vertex and edge ids; loops and multiple
/// edges allowed. Each edge is stored with a reference orientation tail→head.
class Graph {
 public:
  struct Edge {
    int tail = 0;
    int head = 0;
    std::string name;
  };

  Graph() = default;
  Graph(int num_vertices, std::vector<Edge> edges);

  /// Wedge of `rank` circles, petals named a, b, c, ...
  static Graph rose(int rank);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_directions() const { return 2 * num_edges(); }

  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const { return edges_; }

  int tail(OrientedEdge o) const {
    const Edge& e = edges_[static_cast<std::size_t>(o.edge())];
    return o.reversed() ? e.head : e.tail;
  }
  int head(OrientedEdge o) const { return tail(o.inverse()); }

  /// Directions based at v, in increasing order.
  std::span<const Direction> directions_at(int v) const {
    return directions_[static_cast<std::size_t>(v)];
  }
  int valence(int v) const { return static_cast<int>(directions_at(v).size()); }

  const std::string& name(int e) const { return edge(e).name; }

  /// Edge name, or its inverse spelling: uppercase for single lowercase
  /// letters, `name^-1` otherwise.
  std::string label(OrientedEdge o) const;

  std::optional<int> find_edge(std::string_view name) const;

  /// True when every edge name is a single lowercase letter.
  bool single_letter_names() const;

  bool is_connected() const;
  bool is_core() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Direction>> directions_;
};

bool operator==(const Graph::Edge& a, const Graph::Edge& b);

/// Sequence of oriented edges. A closed path is a loop considered up to
/// cyclic rotation; an open path has a definite start and end.
struct EdgePath {
  std::vector<OrientedEdge> edges;
  bool closed = false;

  bool empty() const { return edges.empty(); }
  std::size_t size() const { return edges.size(); }

  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

/// Unordered pair of directions at a common vertex, stored with first <= second.
struct Turn {
  Direction first;
  Direction second;

  Turn() = default;
  Turn(Direction a, Direction b) : first(std::min(a, b)), second(std::max(a, b)) {}

  bool degenerate() const { return first == second; }
  friend auto operator<=>(const Turn&, const Turn&) = default;
};

// ---- free words (no incidence information) ----------------------------

std::vector<OrientedEdge> inverse_word(std::span<const OrientedEdge> word);

/// Cancels adjacent inverse pairs.
std::vector<OrientedEdge> free_reduce(std::span<const OrientedEdge> word);

/// free_reduce followed by trimming matching first/last letters.
std::vector<OrientedEdge> cyclic_reduce(std::span<const OrientedEdge> word);

/// Lexicographically least rotation of the word and of its inverse. Equal for
/// two cyclically reduced words iff they agree up to rotation and inversion.
std::vector<OrientedEdge> canonical_cyclic_word(std::span<const OrientedEdge> word);

// ---- paths in a graph ------------------------------------------------

EdgePath reversed(const EdgePath& path);

/// Throws MalformedPathError on non-incident consecutive edges (and on a
/// closed path that does not close up).
void check_path(const Graph& g, const EdgePath& path);

/// Reduced representative rel endpoints (open) or cyclically reduced (closed).
EdgePath reduce_path(const Graph& g, const EdgePath& path);

bool is_reduced(const EdgePath& path);

/// Per unoriented edge, the number of times the path crosses it.
std::vector<int> crossing_counts(const Graph& g, std::span<const OrientedEdge> edges);

/// Turns taken by a path: {ē_k, e_{k+1}} at each junction, plus the
/// wrap-around turn of a closed path.
std::vector<Turn> turns_of(const EdgePath& path);

/// Label sequence, compact ("aB") when all names are single letters,
/// space separated otherwise.
std::string format_path(const Graph& g, std::span<const OrientedEdge> edges);

/// Inverse of format_path. Tokens are edge names, optionally followed by
/// `^-1`; runs of single-letter names may be written together with uppercase
/// inverses. Throws ParseError.
std::vector<OrientedEdge> parse_path(const Graph& g, std::string_view text);

// ---- subgraphs ---------------------------------------------------------

EdgeSet all_edges(const Graph& g);

/// Vertices touched by the subset.
std::vector<int> support_vertices(const Graph& g, const EdgeSet& subset);

int num_components(const Graph& g, const EdgeSet& subset);

/// Maximal core subgraph of the subset: repeatedly discards edges at vertices
/// of valence <= 1 within the subset.
EdgeSet core(const Graph& g, const EdgeSet& subset);

/// True iff the induced subgraph has first Betti number 0.
bool is_forest(const Graph& g, const EdgeSet& subset);

/// (rank H_1, -rank H_0) of the induced subgraph, compared lexicographically.
struct Complexity {
  int rank_h1 = 0;
  int neg_components = 0;
  friend auto operator<=>(const Complexity&, const Complexity&) = default;
};

/// Throws DomainError on an empty subset.
Complexity complexity(const Graph& g, const EdgeSet& subset);

bool contains(const EdgeSet& set, int edge);

}  // namespace outerspace
