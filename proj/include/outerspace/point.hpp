#pragma once

#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "outerspace/automorphism.hpp"
#include "outerspace/marked_graph.hpp"
#include "outerspace/metric.hpp"

namespace outerspace {

/// A point of Outer space: marked core graph with a unit-volume metric.
template <class Scalar>
struct OuterSpacePoint {
  MarkedGraph marked;
  Metric<Scalar> metric;

  const Graph& graph() const { return marked.graph; }
  int rank() const { return marked.rank(); }
};

/// Validates the marking, the core condition and the metric size.
template <class Scalar>
OuterSpacePoint<Scalar> make_point(MarkedGraph marked, Metric<Scalar> metric) {
  if (metric.size() != marked.graph.num_edges()) throw DomainError("metric size does not match edge count");
  if (!marked.graph.is_core()) throw DomainError("graph of a point must be a core graph");
  validate_marking(marked);
  return OuterSpacePoint<Scalar>{std::move(marked), std::move(metric)};
}

template <class Scalar>
OuterSpacePoint<double> to_double_point(const OuterSpacePoint<Scalar>& x) {
  return OuterSpacePoint<double>{x.marked, x.metric.template cast<double>()};
}

/// Length of the immersed loop freely homotopic to p (0 if nullhomotopic).
template <class Scalar>
Scalar loop_length(const OuterSpacePoint<Scalar>& x, const EdgePath& p) {
  if (!p.closed) throw DomainError("loop_length needs a closed path");
  const EdgePath r = reduce_path(x.graph(), p);
  return x.metric.length(r.edges);
}

/// Cyclically reduced loop crossing each unoriented edge at most twice,
/// in canonical form.
struct CandidateLoop {
  EdgePath loop;
  std::vector<int> crossings;

  friend bool operator==(const CandidateLoop&, const CandidateLoop&) = default;
};

/// Every cyclically reduced loop (up to rotation and inversion) crossing
/// each edge at most twice, optionally restricted to a subset of edges.
/// Sorted shortlex by canonical word.
std::vector<CandidateLoop> candidates(const Graph& g);
std::vector<CandidateLoop> candidates(const Graph& g, const EdgeSet& subset);

template <class Scalar>
std::vector<CandidateLoop> candidates(const OuterSpacePoint<Scalar>& x) {
  return candidates(x.graph());
}

/// Right action x·phi: the marking becomes f∘phi; the inverse marking is
/// postcomposed with phi^{-1}.
template <class Scalar>
OuterSpacePoint<Scalar> act(const OuterSpacePoint<Scalar>& x, const Automorphism& phi,
                            const Automorphism& phi_inverse) {
  if (phi.rank() != x.rank() || phi_inverse.rank() != x.rank()) throw DomainError("rank mismatch in action");
  OuterSpacePoint<Scalar> y = x;
  for (int i = 0; i < x.rank(); ++i) {
    y.marked.marking[static_cast<std::size_t>(i)] = apply_marking(x.marked, phi.image(i));
  }
  for (Word& w : y.marked.inverse_marking) w = phi_inverse.apply(w);
  return y;
}

/// Same, with phi^{-1} recomputed by Stallings folding.
template <class Scalar>
OuterSpacePoint<Scalar> act(const OuterSpacePoint<Scalar>& x, const Automorphism& phi) {
  return act(x, phi, phi.inverse());
}

/// Merges edges at valence-2 vertices, adding lengths. A circle keeps one
/// vertex.
template <class Scalar>
OuterSpacePoint<Scalar> unsubdivide(const OuterSpacePoint<Scalar>& x) {
  OuterSpacePoint<Scalar> cur = x;
  for (;;) {
    const Graph& g = cur.graph();
    int v = -1;
    for (int w = 0; w < g.num_vertices() && g.num_vertices() > 1; ++w) {
      if (g.valence(w) == 2) {
        v = w;
        break;
      }
    }
    if (v < 0) return cur;
    const GraphQuotient q = unsubdivide_at(g, v);
    typename Metric<Scalar>::Vector lengths(q.target.num_edges());
    for (int e = 0; e < q.target.num_edges(); ++e) {
      lengths[e] = cur.metric.length(q.section[static_cast<std::size_t>(e)]);
    }
    MarkedGraph marked = push_marking(cur.marked, q);
    cur = OuterSpacePoint<Scalar>{std::move(marked), Metric<Scalar>(lengths)};
  }
}

/// For each oriented edge o, the shortest cyclically reduced loop whose
/// first edge is o, found by Dijkstra on the non-backtracking line digraph.
template <class Scalar>
std::vector<std::pair<Scalar, EdgePath>> shortest_loops(const Graph& g, const Metric<Scalar>& metric) {
  const int n = g.num_directions();
  std::vector<std::pair<Scalar, EdgePath>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int start = 0; start < n; ++start) {
    const OrientedEdge s = OrientedEdge::from_code(start);
    std::vector<std::optional<Scalar>> dist(static_cast<std::size_t>(n));
    std::vector<int> pred(static_cast<std::size_t>(n), -1);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    using Item = std::pair<Scalar, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[static_cast<std::size_t>(start)] = metric[s.edge()];
    heap.push({metric[s.edge()], start});
    std::optional<Scalar> best;
    int best_last = -1;
    while (!heap.empty()) {
      auto [d, node] = heap.top();
      heap.pop();
      if (done[static_cast<std::size_t>(node)] != 0) continue;
      done[static_cast<std::size_t>(node)] = 1;
      const OrientedEdge cur = OrientedEdge::from_code(node);
      // Closing up: the wrap turn cur -> s must not backtrack.
      if (g.head(cur) == g.tail(s) && s != cur.inverse() && (!best || d < *best)) {
        best = d;
        best_last = node;
      }
      for (Direction next : g.directions_at(g.head(cur))) {
        if (next == cur.inverse()) continue;
        const Scalar nd = d + metric[next.edge()];
        auto& slot = dist[static_cast<std::size_t>(next.code())];
        if (done[static_cast<std::size_t>(next.code())] == 0 && (!slot || nd < *slot)) {
          slot = nd;
          pred[static_cast<std::size_t>(next.code())] = node;
          heap.push({nd, next.code()});
        }
      }
    }
    EdgePath loop{{}, true};
    if (best) {
      for (int node = best_last; node != -1; node = (node == start ? -1 : pred[static_cast<std::size_t>(node)])) {
        loop.edges.push_back(OrientedEdge::from_code(node));
      }
      std::reverse(loop.edges.begin(), loop.edges.end());
      out.emplace_back(*best, std::move(loop));
    } else {
      out.emplace_back(Scalar(-1), std::move(loop));
    }
  }
  return out;
}

template <class Scalar>
struct Systole {
  EdgePath loop;
  Scalar length;
};

/// A shortest essential loop, in canonical form.
template <class Scalar>
Systole<Scalar> systole(const OuterSpacePoint<Scalar>& x) {
  const auto loops = shortest_loops(x.graph(), x.metric);
  std::optional<Systole<Scalar>> best;
  for (const auto& [len, loop] : loops) {
    if (len < Scalar(0)) continue;
    if (!best || len < best->length) best = Systole<Scalar>{loop, len};
  }
  if (!best) throw DomainError("graph has no essential loop");
  best->loop.edges = canonical_cyclic_word(best->loop.edges);
  return *best;
}

/// Membership in the thick part: every essential loop has length >= theta.
template <class Scalar>
bool in_thick_part(const OuterSpacePoint<Scalar>& x, const Scalar& theta) {
  return systole(x).length >= theta;
}

/// Core of the union of edges lying on an immersed essential loop of
/// length <= eps.
template <class Scalar>
EdgeSet epsilon_core(const OuterSpacePoint<Scalar>& x, const Scalar& eps) {
  if (!(eps > Scalar(0))) throw DomainError("eps must be positive");
  const auto loops = shortest_loops(x.graph(), x.metric);
  EdgeSet short_edges;
  for (int e = 0; e < x.graph().num_edges(); ++e) {
    for (bool rev : {false, true}) {
      const auto& [len, loop] = loops[static_cast<std::size_t>(OrientedEdge(e, rev).code())];
      if (len >= Scalar(0) && approx_less_equal(len, eps)) {
        short_edges.push_back(e);
        break;
      }
    }
  }
  return core(x.graph(), short_edges);
}

/// Scale below which the small part of any point is a proper subgraph.
inline double epsilon_n(int rank) { return 1.0 / (6.0 * rank - 6.0); }

/// Bound on the length of a chain of proper core subgraphs.
inline int chain_bound(int rank) { return 3 * rank - 3; }

}  // namespace outerspace
