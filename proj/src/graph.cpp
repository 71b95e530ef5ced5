#include "outerspace/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "outerspace/errors.hpp"

namespace outerspace {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

Graph::Graph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)),
      directions_(static_cast<std::size_t>(num_vertices)) {
  if (num_vertices < 0) throw DomainError("negative vertex count");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.tail < 0 || edge.tail >= num_vertices || edge.head < 0 || edge.head >= num_vertices) {
      throw DomainError("edge " + std::to_string(e) + " has an endpoint out of range");
    }
    if (edges_[e].name.empty()) edges_[e].name = "e" + std::to_string(e);
    const int id = static_cast<int>(e);
    directions_[static_cast<std::size_t>(edge.tail)].push_back(OrientedEdge(id, false));
    directions_[static_cast<std::size_t>(edge.head)].push_back(OrientedEdge(id, true));
  }
  for (auto& list : directions_) std::sort(list.begin(), list.end());
}

Graph Graph::rose(int rank) {
  if (rank < 1 || rank > 26) throw DomainError("rose rank must be in [1, 26]");
  std::vector<Edge> edges;
  for (int i = 0; i < rank; ++i) edges.push_back({0, 0, std::string(1, static_cast<char>('a' + i))});
  return Graph(1, std::move(edges));
}

std::string Graph::label(OrientedEdge o) const {
  const std::string& n = name(o.edge());
  if (!o.reversed()) return n;
  if (n.size() == 1 && std::islower(static_cast<unsigned char>(n[0])) != 0) {
    return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(n[0]))));
  }
  return n + "^-1";
}

std::optional<int> Graph::find_edge(std::string_view name) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].name == name) return static_cast<int>(e);
  }
  return std::nullopt;
}

bool Graph::single_letter_names() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) {
    return e.name.size() == 1 && std::islower(static_cast<unsigned char>(e.name[0])) != 0;
  });
}

bool Graph::is_connected() const {
  if (num_vertices_ == 0) return false;
  UnionFind uf(num_vertices_);
  int components = num_vertices_;
  for (const Edge& e : edges_) {
    if (uf.unite(e.tail, e.head)) --components;
  }
  return components == 1;
}

bool Graph::is_core() const {
  for (int v = 0; v < num_vertices_; ++v) {
    if (valence(v) < 2) return false;
  }
  return num_vertices_ > 0;
}

bool operator==(const Graph::Edge& a, const Graph::Edge& b) {
  return a.tail == b.tail && a.head == b.head && a.name == b.name;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
}

// ---- words -------------------------------------------------------------

std::vector<OrientedEdge> inverse_word(std::span<const OrientedEdge> word) {
  std::vector<OrientedEdge> out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::vector<OrientedEdge> free_reduce(std::span<const OrientedEdge> word) {
  std::vector<OrientedEdge> out;
  out.reserve(word.size());
  for (OrientedEdge letter : word) {
    if (!out.empty() && out.back() == letter.inverse()) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

std::vector<OrientedEdge> cyclic_reduce(std::span<const OrientedEdge> word) {
  std::vector<OrientedEdge> w = free_reduce(word);
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return std::vector<OrientedEdge>(w.begin() + static_cast<std::ptrdiff_t>(lo),
                                   w.begin() + static_cast<std::ptrdiff_t>(hi));
}

std::vector<OrientedEdge> canonical_cyclic_word(std::span<const OrientedEdge> word) {
  std::vector<OrientedEdge> best(word.begin(), word.end());
  const std::size_t n = best.size();
  if (n == 0) return best;
  const std::vector<OrientedEdge> forward(word.begin(), word.end());
  const std::vector<OrientedEdge> backward = inverse_word(word);
  std::vector<OrientedEdge> candidate(n);
  for (const auto* source : {&forward, &backward}) {
    for (std::size_t shift = 0; shift < n; ++shift) {
      for (std::size_t i = 0; i < n; ++i) candidate[i] = (*source)[(i + shift) % n];
      if (candidate < best) best = candidate;
    }
  }
  return best;
}

// ---- paths -------------------------------------------------------------

EdgePath reversed(const EdgePath& path) {
  return EdgePath{inverse_word(path.edges), path.closed};
}

void check_path(const Graph& g, const EdgePath& path) {
  for (OrientedEdge o : path.edges) {
    if (o.edge() < 0 || o.edge() >= g.num_edges()) {
      throw MalformedPathError("edge id " + std::to_string(o.edge()) + " out of range");
    }
  }
  for (std::size_t i = 0; i + 1 < path.edges.size(); ++i) {
    if (g.head(path.edges[i]) != g.tail(path.edges[i + 1])) {
      throw MalformedPathError("edges " + std::to_string(i) + " and " + std::to_string(i + 1) +
                               " are not incident");
    }
  }
  if (path.closed && !path.edges.empty() && g.head(path.edges.back()) != g.tail(path.edges.front())) {
    throw MalformedPathError("closed path does not close up");
  }
}

EdgePath reduce_path(const Graph& g, const EdgePath& path) {
  check_path(g, path);
  return EdgePath{path.closed ? cyclic_reduce(path.edges) : free_reduce(path.edges), path.closed};
}

bool is_reduced(const EdgePath& path) {
  const auto& w = path.edges;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i + 1] == w[i].inverse()) return false;
  }
  if (path.closed && w.size() >= 2 && w.front() == w.back().inverse()) return false;
  return true;
}

std::vector<int> crossing_counts(const Graph& g, std::span<const OrientedEdge> edges) {
  std::vector<int> counts(static_cast<std::size_t>(g.num_edges()), 0);
  for (OrientedEdge o : edges) ++counts[static_cast<std::size_t>(o.edge())];
  return counts;
}

std::vector<Turn> turns_of(const EdgePath& path) {
  std::vector<Turn> out;
  const auto& w = path.edges;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) out.emplace_back(w[i].inverse(), w[i + 1]);
  if (path.closed && !w.empty()) out.emplace_back(w.back().inverse(), w.front());
  return out;
}

std::string format_path(const Graph& g, std::span<const OrientedEdge> edges) {
  std::string out;
  const bool compact = g.single_letter_names();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += g.label(edges[i]);
  }
  return out;
}

std::vector<OrientedEdge> parse_path(const Graph& g, std::string_view text) {
  std::vector<OrientedEdge> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0 || c == '.' || c == '*') {
      ++i;
      continue;
    }
    if (!is_identifier_char(c)) throw ParseError(std::string("unexpected character '") + c + "'", i);
    const std::size_t start = i;
    while (i < text.size() && is_identifier_char(text[i])) ++i;
    const std::string_view token = text.substr(start, i - start);
    bool inverted = false;
    if (text.substr(i, 3) == "^-1") {
      inverted = true;
      i += 3;
    }
    if (auto e = g.find_edge(token)) {
      out.emplace_back(*e, inverted);
      continue;
    }
    if (inverted) throw ParseError("unknown edge '" + std::string(token) + "'", start);
    for (std::size_t k = 0; k < token.size(); ++k) {
      const char letter = token[k];
      if (std::isalpha(static_cast<unsigned char>(letter)) == 0) {
        throw ParseError("unknown edge '" + std::string(token) + "'", start);
      }
      const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(letter)));
      auto e = g.find_edge(std::string_view(&lower, 1));
      if (!e) throw ParseError(std::string("unknown edge '") + lower + "'", start + k);
      out.emplace_back(*e, letter != lower);
    }
  }
  return out;
}

// ---- subgraphs -----------------------------------------------------------

bool contains(const EdgeSet& set, int edge) {
  return std::binary_search(set.begin(), set.end(), edge);
}

EdgeSet all_edges(const Graph& g) {
  EdgeSet out(static_cast<std::size_t>(g.num_edges()));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<int> support_vertices(const Graph& g, const EdgeSet& subset) {
  std::vector<int> out;
  for (int e : subset) {
    out.push_back(g.edge(e).tail);
    out.push_back(g.edge(e).head);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int num_components(const Graph& g, const EdgeSet& subset) {
  const std::vector<int> vertices = support_vertices(g, subset);
  UnionFind uf(g.num_vertices());
  int components = static_cast<int>(vertices.size());
  for (int e : subset) {
    if (uf.unite(g.edge(e).tail, g.edge(e).head)) --components;
  }
  return components;
}

EdgeSet core(const Graph& g, const EdgeSet& subset) {
  std::vector<char> alive(static_cast<std::size_t>(g.num_edges()), 0);
  for (int e : subset) alive[static_cast<std::size_t>(e)] = 1;
  std::vector<int> valence(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int e : subset) {
    ++valence[static_cast<std::size_t>(g.edge(e).tail)];
    ++valence[static_cast<std::size_t>(g.edge(e).head)];
  }
  std::vector<int> stack;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (valence[static_cast<std::size_t>(v)] == 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (valence[static_cast<std::size_t>(v)] != 1) continue;
    for (Direction d : g.directions_at(v)) {
      const auto e = static_cast<std::size_t>(d.edge());
      if (alive[e] == 0) continue;
      alive[e] = 0;
      const int other = g.head(d);
      --valence[static_cast<std::size_t>(v)];
      --valence[static_cast<std::size_t>(other)];
      if (valence[static_cast<std::size_t>(other)] == 1) stack.push_back(other);
      break;
    }
  }
  EdgeSet out;
  for (int e : subset) {
    if (alive[static_cast<std::size_t>(e)] != 0) out.push_back(e);
  }
  return out;
}

bool is_forest(const Graph& g, const EdgeSet& subset) {
  UnionFind uf(g.num_vertices());
  for (int e : subset) {
    if (!uf.unite(g.edge(e).tail, g.edge(e).head)) return false;
  }
  return true;
}

Complexity complexity(const Graph& g, const EdgeSet& subset) {
  if (subset.empty()) throw DomainError("complexity of an empty subgraph");
  const int v = static_cast<int>(support_vertices(g, subset).size());
  const int c = num_components(g, subset);
  return Complexity{static_cast<int>(subset.size()) - v + c, -c};
}

}  // namespace outerspace
