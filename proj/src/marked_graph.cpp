#include "outerspace/marked_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "outerspace/errors.hpp"

namespace outerspace {

namespace {

struct SpanningTree {
  std::vector<OrientedEdge> parent;  // direction from parent into v
  std::vector<char> is_tree_edge;
  std::vector<int> non_tree;         // ascending edge ids
};

SpanningTree bfs_tree(const Graph& g, int base) {
  SpanningTree t;
  t.parent.assign(static_cast<std::size_t>(g.num_vertices()), OrientedEdge());
  t.is_tree_edge.assign(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::queue<int> queue;
  queue.push(base);
  seen[static_cast<std::size_t>(base)] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (Direction d : g.directions_at(v)) {
      const int w = g.head(d);
      if (seen[static_cast<std::size_t>(w)] != 0) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      t.parent[static_cast<std::size_t>(w)] = d;
      t.is_tree_edge[static_cast<std::size_t>(d.edge())] = 1;
      queue.push(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw MarkingIntegrityError("graph is not connected");
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (t.is_tree_edge[static_cast<std::size_t>(e)] == 0) t.non_tree.push_back(e);
  }
  return t;
}

std::vector<OrientedEdge> tree_path_from_base(const Graph& g, const SpanningTree& t, int base, int v) {
  std::vector<OrientedEdge> rev;
  while (v != base) {
    const OrientedEdge d = t.parent[static_cast<std::size_t>(v)];
    rev.push_back(d);
    v = g.tail(d);
  }
  return std::vector<OrientedEdge>(rev.rbegin(), rev.rend());
}

// Renumbers vertices given a representative map (old -> class id), keeping
// the order of the smallest member of each class.
std::vector<int> compact_vertices(const std::vector<int>& cls, std::span<const char> removed = {}) {
  const std::size_t n = cls.size();
  std::vector<int> new_id(n, -1);
  std::vector<int> class_id(n, -1);
  int next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(cls[v]);
    if (!removed.empty() && removed[c] != 0) continue;
    if (class_id[c] < 0) class_id[c] = next++;
    new_id[v] = class_id[c];
  }
  return new_id;
}

}  // namespace

int betti_number(const Graph& g) { return g.num_edges() - g.num_vertices() + 1; }

MarkedGraph rose_marked_graph(int rank) {
  MarkedGraph mg;
  mg.graph = Graph::rose(rank);
  mg.base = 0;
  for (int i = 0; i < rank; ++i) {
    mg.marking.push_back(EdgePath{{OrientedEdge(i, false)}, false});
    mg.inverse_marking.push_back(Word{generator(i)});
  }
  return mg;
}

MarkedGraph spanning_tree_marking(const Graph& g, int base) {
  const SpanningTree t = bfs_tree(g, base);
  MarkedGraph mg;
  mg.graph = g;
  mg.base = base;
  mg.inverse_marking.assign(static_cast<std::size_t>(g.num_edges()), Word{});
  for (std::size_t j = 0; j < t.non_tree.size(); ++j) {
    const OrientedEdge e(t.non_tree[j], false);
    std::vector<OrientedEdge> loop = tree_path_from_base(g, t, base, g.tail(e));
    loop.push_back(e);
    const std::vector<OrientedEdge> back = inverse_word(tree_path_from_base(g, t, base, g.head(e)));
    loop.insert(loop.end(), back.begin(), back.end());
    mg.marking.push_back(EdgePath{free_reduce(loop), false});
    mg.inverse_marking[static_cast<std::size_t>(e.edge())] = Word{generator(static_cast<int>(j))};
  }
  return mg;
}

std::vector<Word> compute_inverse_marking(const Graph& g, int base, std::span<const EdgePath> marking) {
  const SpanningTree t = bfs_tree(g, base);
  const int rank = static_cast<int>(marking.size());
  if (static_cast<int>(t.non_tree.size()) != rank) {
    throw MarkingIntegrityError("marking rank " + std::to_string(rank) + " does not match H_1 rank " +
                                std::to_string(t.non_tree.size()));
  }
  std::vector<int> index(static_cast<std::size_t>(g.num_edges()), -1);
  for (std::size_t j = 0; j < t.non_tree.size(); ++j) {
    index[static_cast<std::size_t>(t.non_tree[j])] = static_cast<int>(j);
  }
  std::vector<Word> basis_words;
  for (const EdgePath& p : marking) {
    Word w;
    for (OrientedEdge o : p.edges) {
      const int j = index[static_cast<std::size_t>(o.edge())];
      if (j >= 0) w.push_back(Letter(j, o.reversed()));
    }
    basis_words.push_back(free_reduce(w));
  }
  auto inv = invert_basis(rank, basis_words);
  if (!inv) throw MarkingIntegrityError("marking is not a homotopy equivalence");
  std::vector<Word> out(static_cast<std::size_t>(g.num_edges()));
  for (std::size_t j = 0; j < t.non_tree.size(); ++j) {
    out[static_cast<std::size_t>(t.non_tree[j])] = (*inv)[j];
  }
  return out;
}

EdgePath apply_marking(const MarkedGraph& mg, std::span<const Letter> word) {
  std::vector<OrientedEdge> out;
  for (Letter l : word) {
    const auto& loop = mg.marking.at(static_cast<std::size_t>(l.edge())).edges;
    if (l.reversed()) {
      const auto inv = inverse_word(loop);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), loop.begin(), loop.end());
    }
  }
  return EdgePath{free_reduce(out), false};
}

Word apply_inverse_marking(const MarkedGraph& mg, std::span<const OrientedEdge> path) {
  Word out;
  for (OrientedEdge o : path) {
    const Word& w = mg.inverse_marking.at(static_cast<std::size_t>(o.edge()));
    if (o.reversed()) {
      const Word inv = inverse_word(w);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), w.begin(), w.end());
    }
  }
  return free_reduce(out);
}

void validate_marking(const MarkedGraph& mg) {
  const Graph& g = mg.graph;
  if (!g.is_connected()) throw MarkingIntegrityError("graph is not connected");
  if (mg.base < 0 || mg.base >= g.num_vertices()) throw MarkingIntegrityError("base vertex out of range");
  if (betti_number(g) != mg.rank()) throw MarkingIntegrityError("marking rank does not match H_1 rank");
  if (static_cast<int>(mg.inverse_marking.size()) != g.num_edges()) {
    throw MarkingIntegrityError("inverse marking needs one word per edge");
  }
  for (const Word& w : mg.inverse_marking) {
    for (Letter l : w) {
      if (l.edge() >= mg.rank()) throw MarkingIntegrityError("inverse marking uses a generator beyond the rank");
    }
  }
  std::vector<Word> composite;
  for (const EdgePath& p : mg.marking) {
    try {
      check_path(g, p);
    } catch (const MalformedPathError& e) {
      throw MarkingIntegrityError(std::string("marking path: ") + e.what());
    }
    const int start = p.empty() ? mg.base : g.tail(p.edges.front());
    const int end = p.empty() ? mg.base : g.head(p.edges.back());
    if (start != mg.base || end != mg.base) throw MarkingIntegrityError("marking loop not based at the base vertex");
    composite.push_back(apply_inverse_marking(mg, p.edges));
  }
  if (!common_conjugator(composite)) {
    throw MarkingIntegrityError("inverse marking is not a homotopy inverse of the marking");
  }
}

// ---- quotients -------------------------------------------------------------

std::vector<OrientedEdge> GraphQuotient::image(OrientedEdge o) const {
  const auto& forward = edge_map.at(static_cast<std::size_t>(o.edge()));
  return o.reversed() ? inverse_word(forward) : forward;
}

std::vector<OrientedEdge> GraphQuotient::push(std::span<const OrientedEdge> path) const {
  std::vector<OrientedEdge> out;
  for (OrientedEdge o : path) {
    const auto piece = image(o);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return free_reduce(out);
}

GraphQuotient collapse_edges(const Graph& g, const EdgeSet& forest) {
  if (!is_forest(g, forest)) throw RankCollapseError("collapsed subgraph carries a loop");
  std::vector<int> cls(static_cast<std::size_t>(g.num_vertices()));
  std::iota(cls.begin(), cls.end(), 0);
  auto find = [&](int x) {
    while (cls[static_cast<std::size_t>(x)] != x) x = cls[static_cast<std::size_t>(x)];
    return x;
  };
  for (int e : forest) {
    const int a = find(g.edge(e).tail);
    const int b = find(g.edge(e).head);
    cls[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  for (int v = 0; v < g.num_vertices(); ++v) cls[static_cast<std::size_t>(v)] = find(v);
  GraphQuotient q;
  q.vertex_map = compact_vertices(cls);
  const int num_new_vertices = g.num_vertices() == 0 ? 0 : *std::max_element(q.vertex_map.begin(), q.vertex_map.end()) + 1;
  std::vector<Graph::Edge> edges;
  q.edge_map.resize(static_cast<std::size_t>(g.num_edges()));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (contains(forest, e)) continue;
    const Graph::Edge& old = g.edge(e);
    const int id = static_cast<int>(edges.size());
    edges.push_back({q.vertex_map[static_cast<std::size_t>(old.tail)],
                     q.vertex_map[static_cast<std::size_t>(old.head)], old.name});
    q.edge_map[static_cast<std::size_t>(e)] = {OrientedEdge(id, false)};
    q.section.push_back({OrientedEdge(e, false)});
  }
  q.target = Graph(num_new_vertices, std::move(edges));
  return q;
}

GraphQuotient unsubdivide_at(const Graph& g, int vertex, int collapsed_edge) {
  if (g.valence(vertex) != 2) throw DomainError("vertex is not of valence 2");
  const Direction d1 = g.directions_at(vertex)[0];
  const Direction d2 = g.directions_at(vertex)[1];
  if (d1.edge() == d2.edge()) throw DomainError("graph is a circle");
  // The merged edge traverses in = d1^{-1} (ending at vertex), then d2.
  const OrientedEdge in = d1.inverse();
  const OrientedEdge out = d2;
  if (collapsed_edge < 0) collapsed_edge = out.edge();
  if (collapsed_edge != in.edge() && collapsed_edge != out.edge()) {
    throw DomainError("collapsed edge must be incident to the vertex");
  }
  const bool collapse_out = collapsed_edge == out.edge();
  const int kept = std::min(in.edge(), out.edge());
  const int dropped = std::max(in.edge(), out.edge());
  const bool kept_is_in = kept == in.edge();
  const OrientedEdge kept_occurrence = kept_is_in ? in : out;
  // Forward orientation of the merged edge agrees with the kept edge.
  const bool forward_along_path = !kept_occurrence.reversed();
  const int from = forward_along_path ? g.tail(in) : g.head(out);
  const int to = forward_along_path ? g.head(out) : g.tail(in);

  std::vector<int> cls(static_cast<std::size_t>(g.num_vertices()));
  std::iota(cls.begin(), cls.end(), 0);
  cls[static_cast<std::size_t>(vertex)] = collapse_out ? g.head(out) : g.tail(in);
  GraphQuotient q;
  q.vertex_map = compact_vertices(cls);
  std::vector<Graph::Edge> edges;
  std::vector<int> new_id(static_cast<std::size_t>(g.num_edges()), -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e == dropped) continue;
    new_id[static_cast<std::size_t>(e)] = static_cast<int>(edges.size());
    const Graph::Edge& old = g.edge(e);
    if (e == kept) {
      edges.push_back({q.vertex_map[static_cast<std::size_t>(from)], q.vertex_map[static_cast<std::size_t>(to)], old.name});
    } else {
      edges.push_back({q.vertex_map[static_cast<std::size_t>(old.tail)], q.vertex_map[static_cast<std::size_t>(old.head)], old.name});
    }
  }
  q.edge_map.resize(static_cast<std::size_t>(g.num_edges()));
  q.section.resize(edges.size());
  const OrientedEdge merged_along_path(new_id[static_cast<std::size_t>(kept)], !forward_along_path);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e == kept || e == dropped) continue;
    q.edge_map[static_cast<std::size_t>(e)] = {OrientedEdge(new_id[static_cast<std::size_t>(e)], false)};
    q.section[static_cast<std::size_t>(new_id[static_cast<std::size_t>(e)])] = {OrientedEdge(e, false)};
  }
  // The surviving side maps onto the merged edge, the collapsed side to a point.
  const OrientedEdge survivor = collapse_out ? in : out;
  const OrientedEdge gone = collapse_out ? out : in;
  q.edge_map[static_cast<std::size_t>(survivor.edge())] =
      survivor.reversed() ? std::vector<OrientedEdge>{merged_along_path.inverse()} : std::vector<OrientedEdge>{merged_along_path};
  q.edge_map[static_cast<std::size_t>(gone.edge())] = {};
  const std::vector<OrientedEdge> along{in, out};
  q.section[static_cast<std::size_t>(new_id[static_cast<std::size_t>(kept)])] =
      forward_along_path ? along : inverse_word(along);
  q.target = Graph(g.num_vertices() - 1, std::move(edges));
  return q;
}

GraphQuotient identify_edges(const Graph& g, Direction keep, Direction drop) {
  if (g.tail(keep) != g.tail(drop)) throw DomainError("identified edges must share their initial vertex");
  if (keep.edge() == drop.edge()) throw DomainError("cannot identify an edge with itself");
  const int hk = g.head(keep);
  const int hd = g.head(drop);
  if (hk == hd) throw RankCollapseError("identifying parallel edges kills a loop");
  std::vector<int> cls(static_cast<std::size_t>(g.num_vertices()));
  std::iota(cls.begin(), cls.end(), 0);
  cls[static_cast<std::size_t>(hd)] = hk;
  for (auto& c : cls) {
    if (c == hd) c = hk;
  }
  GraphQuotient q;
  q.vertex_map = compact_vertices(cls);
  const int num_new_vertices = g.num_vertices() - 1;
  std::vector<Graph::Edge> edges;
  std::vector<int> new_id(static_cast<std::size_t>(g.num_edges()), -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e == drop.edge()) continue;
    new_id[static_cast<std::size_t>(e)] = static_cast<int>(edges.size());
    const Graph::Edge& old = g.edge(e);
    edges.push_back({q.vertex_map[static_cast<std::size_t>(old.tail)], q.vertex_map[static_cast<std::size_t>(old.head)], old.name});
  }
  q.edge_map.resize(static_cast<std::size_t>(g.num_edges()));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e == drop.edge()) continue;
    q.edge_map[static_cast<std::size_t>(e)] = {OrientedEdge(new_id[static_cast<std::size_t>(e)], false)};
    q.section.push_back({OrientedEdge(e, false)});
  }
  const OrientedEdge keep_new(new_id[static_cast<std::size_t>(keep.edge())], keep.reversed());
  q.edge_map[static_cast<std::size_t>(drop.edge())] = {drop.reversed() ? keep_new.inverse() : keep_new};
  q.target = Graph(num_new_vertices, std::move(edges));
  return q;
}

std::string fresh_edge_name(const Graph& g, int& counter) {
  for (;;) {
    std::string name = "e" + std::to_string(counter++);
    if (!g.find_edge(name)) return name;
  }
}

GraphQuotient subdivide(const Graph& g, std::span<const int> pieces, int& name_counter) {
  GraphQuotient q;
  q.vertex_map.resize(static_cast<std::size_t>(g.num_vertices()));
  std::iota(q.vertex_map.begin(), q.vertex_map.end(), 0);
  std::vector<Graph::Edge> edges = g.edges();
  q.edge_map.resize(static_cast<std::size_t>(g.num_edges()));
  int num_vertices = g.num_vertices();
  Graph names_in_use = g;
  for (int e = 0; e < g.num_edges(); ++e) {
    const int k = std::max(1, pieces.empty() ? 1 : pieces[static_cast<std::size_t>(e)]);
    auto& image = q.edge_map[static_cast<std::size_t>(e)];
    image.push_back(OrientedEdge(e, false));
    if (k == 1) continue;
    const int head = g.edge(e).head;
    int prev = num_vertices++;
    edges[static_cast<std::size_t>(e)].head = prev;
    for (int i = 1; i < k; ++i) {
      const int next = (i + 1 == k) ? head : num_vertices++;
      std::string name;
      do {
        name = "e" + std::to_string(name_counter++);
      } while (names_in_use.find_edge(name) ||
               std::any_of(edges.begin(), edges.end(), [&](const Graph::Edge& x) { return x.name == name; }));
      image.push_back(OrientedEdge(static_cast<int>(edges.size()), false));
      edges.push_back({prev, next, name});
      prev = next;
    }
  }
  q.target = Graph(num_vertices, std::move(edges));
  return q;
}

MarkedGraph push_marking(const MarkedGraph& mg, const GraphQuotient& q) {
  MarkedGraph out;
  out.graph = q.target;
  out.base = q.vertex_map.at(static_cast<std::size_t>(mg.base));
  for (const EdgePath& p : mg.marking) out.marking.push_back(EdgePath{q.push(p.edges), false});
  out.inverse_marking = compute_inverse_marking(out.graph, out.base, out.marking);
  return out;
}

}  // namespace outerspace
