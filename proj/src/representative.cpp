#include <algorithm>

#include "outerspace/errors.hpp"
#include "outerspace/train_track.hpp"
#include "outerspace/transition.hpp"

namespace outerspace {

Representative rose_representative(const Automorphism& phi) {
  Representative r;
  r.marked = rose_marked_graph(phi.rank());
  r.map = representative_map(r.marked, phi);
  return r;
}

Representative push_representative(const Representative& r, const GraphQuotient& q) {
  Representative out;
  out.marked = push_marking(r.marked, q);
  out.name_counter = r.name_counter;
  const Graph& g = r.graph();
  const Graph& t = q.target;
  GraphMap m;
  m.domain = t;
  m.codomain = t;
  m.self_map = true;
  m.vertex_image.assign(static_cast<std::size_t>(t.num_vertices()), -1);
  const auto assign = [&](int target_vertex, int image) {
    int& slot = m.vertex_image[static_cast<std::size_t>(target_vertex)];
    if (slot >= 0 && slot != image) throw InternalError("quotient map is not well defined on vertices");
    slot = image;
  };
  for (int e = 0; e < t.num_edges(); ++e) {
    const auto& sec = q.section.at(static_cast<std::size_t>(e));
    if (sec.empty()) throw InternalError("quotient has no section for an edge");
    const int from = q.vertex_map[static_cast<std::size_t>(r.map.vertex_image[static_cast<std::size_t>(g.tail(sec.front()))])];
    const int to = q.vertex_map[static_cast<std::size_t>(r.map.vertex_image[static_cast<std::size_t>(g.head(sec.back()))])];
    assign(t.tail(OrientedEdge(e, false)), from);
    assign(t.head(OrientedEdge(e, false)), to);
    m.edge_image.push_back(q.push(r.map.raw_image(sec)));
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int tv = q.vertex_map[static_cast<std::size_t>(v)];
    if (m.vertex_image[static_cast<std::size_t>(tv)] < 0) {
      m.vertex_image[static_cast<std::size_t>(tv)] = q.vertex_map[static_cast<std::size_t>(r.map.vertex_image[static_cast<std::size_t>(v)])];
    }
  }
  out.map = std::move(m);
  return out;
}

Representative collapse_forest(const Representative& r, const EdgeSet& forest) {
  return push_representative(r, collapse_edges(r.graph(), forest));
}

namespace {

// Side of a valence-2 vertex to shrink: the one whose merged map has the
// smaller spectral radius. When the vertex is itself a vertex image, images
// ending there cross only one side, and neither choice is safe a priori.
int valence_two_collapse(const Representative& r, int vertex) {
  const Graph& g = r.graph();
  const int e1 = g.directions_at(vertex)[0].edge();
  const int e2 = g.directions_at(vertex)[1].edge();
  const auto radius = [&](int collapsed) {
    const Representative merged = push_representative(r, unsubdivide_at(g, vertex, collapsed));
    return spectral_radius(transition_matrix(merged.map));
  };
  return radius(e1) < radius(e2) * (1.0 - kTolerance) ? e1 : e2;
}

}  // namespace

Representative normalize(const Representative& r) {
  Representative cur = r;
  for (;;) {
    const Graph& g = cur.graph();
    EdgeSet empty;
    for (int e = 0; e < g.num_edges(); ++e) {
      if (cur.map.edge_image[static_cast<std::size_t>(e)].empty()) empty.push_back(e);
    }
    if (!empty.empty()) {
      if (!is_forest(g, empty)) throw RankCollapseError("edges with trivial image contain a loop");
      cur = collapse_forest(cur, empty);
      continue;
    }
    int leaf = -1;
    int valence_two = -1;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.valence(v) == 1 && leaf < 0) leaf = v;
      if (g.valence(v) == 2 && valence_two < 0 && g.directions_at(v)[0].edge() != g.directions_at(v)[1].edge()) {
        valence_two = v;
      }
    }
    if (leaf >= 0) {
      cur = collapse_forest(cur, {g.directions_at(leaf)[0].edge()});
      continue;
    }
    if (valence_two >= 0) {
      cur = push_representative(cur, unsubdivide_at(g, valence_two, valence_two_collapse(cur, valence_two)));
      continue;
    }
    return cur;
  }
}

Representative fold(const Representative& r, const Turn& turn, std::vector<Turn>* tracked) {
  if (turn.degenerate()) throw DomainError("cannot fold a degenerate turn");
  const Graph& g = r.graph();
  const Direction d1 = turn.first;
  const Direction d2 = turn.second;
  if (g.tail(d1) != g.tail(d2)) throw DomainError("turn directions start at different vertices");
  const auto p1 = r.map.image(d1);
  const auto p2 = r.map.image(d2);
  if (p1.empty() || p2.empty()) throw UndefinedDerivativeError("fold needs nondegenerate images");
  std::size_t k = 0;
  while (k < p1.size() && k < p2.size() && p1[k] == p2[k]) ++k;
  if (k == 0) throw DomainError("turn is legal; nothing to fold");

  // Cut positions in forward coordinates of each edge.
  std::vector<std::vector<int>> cuts(static_cast<std::size_t>(g.num_edges()));
  const auto add_cut = [&](Direction d, std::size_t len) {
    if (k >= len) return;
    const int pos = d.reversed() ? static_cast<int>(len - k) : static_cast<int>(k);
    cuts[static_cast<std::size_t>(d.edge())].push_back(pos);
  };
  add_cut(d1, p1.size());
  add_cut(d2, p2.size());
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  Representative sub = r;
  const bool any_cut = std::any_of(cuts.begin(), cuts.end(), [](const auto& c) { return !c.empty(); });
  GraphQuotient q;
  if (any_cut) {
    std::vector<int> pieces(static_cast<std::size_t>(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e) pieces[static_cast<std::size_t>(e)] = static_cast<int>(cuts[static_cast<std::size_t>(e)].size()) + 1;
    q = subdivide(g, pieces, sub.name_counter);
    const Graph& t = q.target;
    GraphMap m;
    m.domain = t;
    m.codomain = t;
    m.self_map = true;
    m.vertex_image.assign(static_cast<std::size_t>(t.num_vertices()), -1);
    for (int v = 0; v < g.num_vertices(); ++v) m.vertex_image[static_cast<std::size_t>(v)] = r.map.vertex_image[static_cast<std::size_t>(v)];
    m.edge_image.resize(static_cast<std::size_t>(t.num_edges()));
    int next_vertex = g.num_vertices();
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& full = r.map.edge_image[static_cast<std::size_t>(e)];
      const auto& piece_ids = q.edge_map[static_cast<std::size_t>(e)];
      std::vector<int> bounds{0};
      bounds.insert(bounds.end(), cuts[static_cast<std::size_t>(e)].begin(), cuts[static_cast<std::size_t>(e)].end());
      bounds.push_back(static_cast<int>(full.size()));
      for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const std::span<const OrientedEdge> segment(full.data() + bounds[i], static_cast<std::size_t>(bounds[i + 1] - bounds[i]));
        m.edge_image[static_cast<std::size_t>(piece_ids[i].edge())] = q.push(segment);
        if (i > 0) {
          // New vertex at the cut between pieces i-1 and i.
          m.vertex_image[static_cast<std::size_t>(next_vertex++)] = g.head(full[static_cast<std::size_t>(bounds[i] - 1)]);
        }
      }
    }
    sub.marked = push_marking(r.marked, q);
    sub.map = std::move(m);
  }

  const auto starred = [&](Direction d) {
    if (!any_cut) return d;
    const auto& piece_ids = q.edge_map[static_cast<std::size_t>(d.edge())];
    return d.reversed() ? piece_ids.back().inverse() : piece_ids.front();
  };
  const Direction keep = starred(d1);
  const Direction drop = starred(d2);
  if (sub.map.image(keep) != sub.map.image(drop)) throw InternalError("fold pieces have different images");
  const GraphQuotient glue = identify_edges(sub.graph(), keep, drop);
  if (tracked) {
    const auto through = [&](Direction d) { return glue.image(starred(d)).front(); };
    for (Turn& t : *tracked) t = Turn(through(t.first), through(t.second));
  }
  return push_representative(sub, glue);
}

}  // namespace outerspace
