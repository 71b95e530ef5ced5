#pragma once

// Shared fixtures, generators and independent oracles for the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "outerspace/automorphism.hpp"
#include "outerspace/graph.hpp"
#include "outerspace/marked_graph.hpp"
#include "outerspace/point.hpp"
#include "outerspace/scalar.hpp"

namespace testing {

namespace os = outerspace;

inline const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;
inline const double kGoldenSquared = (3.0 + std::sqrt(5.0)) / 2.0;

// An isometry of the rank-3 rose of order 6, an irreducible map with growth
// rate the golden ratio squared, a reducible linear-growth map and a
// reducible rank-4 map with two golden blocks.
inline const char* const kRotation = "a->B; b->C; c->A";
inline const char* const kGoldenMap = "a->ab; b->bab";
inline const char* const kShear = "a->a; b->ab";
inline const char* const kRank4 = "a->ab; b->bab; c->cad; d->dcad";

inline os::Automorphism aut(const char* text) { return os::Automorphism::parse(text); }

// Two vertices joined by three edges e1, e2, e3, all 0 -> 1.
inline os::Graph theta_graph() {
  return os::Graph(2, {{0, 1, "e1"}, {0, 1, "e2"}, {0, 1, "e3"}});
}

// Loops x at 0 and y at 1 joined by z: 0 -> 1.
inline os::Graph barbell_graph() {
  return os::Graph(2, {{0, 0, "x"}, {1, 1, "y"}, {0, 1, "z"}});
}

inline os::EdgePath loop_of(const os::Graph& g, const std::string& text) {
  return os::EdgePath{os::parse_path(g, text), true};
}

inline os::Metric<os::Rational> rational_metric(const std::vector<std::string>& lengths) {
  os::Metric<os::Rational>::Vector v(static_cast<Eigen::Index>(lengths.size()));
  for (std::size_t i = 0; i < lengths.size(); ++i) v[static_cast<Eigen::Index>(i)] = os::parse_rational(lengths[i]);
  return os::Metric<os::Rational>(v);
}

inline os::OuterSpacePoint<os::Rational> rose_point(const std::vector<std::string>& lengths) {
  return os::make_point(os::rose_marked_graph(static_cast<int>(lengths.size())), rational_metric(lengths));
}

inline os::OuterSpacePoint<os::Rational> graph_point(const os::Graph& g, const std::vector<std::string>& lengths) {
  return os::make_point(os::spanning_tree_marking(g), rational_metric(lengths));
}

// Positive integer weights in [1, 20], normalized.
inline os::Metric<os::Rational> random_rational_metric(int num_edges, std::mt19937& rng) {
  std::uniform_int_distribution<int> weight(1, 20);
  os::Metric<os::Rational>::Vector v(num_edges);
  for (int e = 0; e < num_edges; ++e) v[e] = os::Rational(weight(rng));
  return os::Metric<os::Rational>::from_weights(v);
}

inline os::Metric<double> random_double_metric(int num_edges, std::mt19937& rng) {
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  os::Metric<double>::Vector v(num_edges);
  for (int e = 0; e < num_edges; ++e) v[e] = weight(rng);
  return os::Metric<double>::from_weights(v);
}

// Product of `moves` random Nielsen moves on the images (w_i -> w_i w_j^{±1},
// w_j^{±1} w_i, inversion, swap), so always an automorphism.
inline os::Automorphism random_automorphism(int rank, int moves, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, rank - 1);
  std::uniform_int_distribution<int> kind(0, 5);
  std::vector<os::Word> images;
  for (int i = 0; i < rank; ++i) images.push_back({os::generator(i)});
  for (int step = 0; step < moves; ++step) {
    const int i = pick(rng);
    int j = pick(rng);
    const int k = kind(rng);
    if (rank > 1) {
      while (j == i) j = pick(rng);
    }
    const os::Word other = images[static_cast<std::size_t>(j)];
    os::Word& w = images[static_cast<std::size_t>(i)];
    if (k <= 3 && rank > 1) {
      const os::Word factor = k % 2 == 1 ? os::inverse_word(other) : other;
      w = os::free_reduce(k < 2 ? os::concat(w, factor) : os::concat(factor, w));
    } else if (k == 4) {
      w = os::inverse_word(w);
    } else if (rank > 1) {
      std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
    }
  }
  return os::Automorphism(rank, images);
}

// Letter string rewriting: repeatedly deletes "xX" or "Xx". Independent of
// the library's stack-based reduction.
inline std::string rewrite_reduce(std::string s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const char a = s[i];
      const char b = s[i + 1];
      if (a != b && std::tolower(a) == std::tolower(b)) {
        s.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

inline std::string word_string(const std::vector<os::OrientedEdge>& w) { return os::format_word(w); }

// Connected core multigraphs with 1..max_edges edges, one per isomorphism
// class (vertex relabelings and edge reorderings).
inline std::vector<os::Graph> core_graphs(int max_edges) {
  std::vector<os::Graph> out;
  for (int ne = 1; ne <= max_edges; ++ne) {
    for (int nv = 1; nv <= ne; ++nv) {
      std::vector<std::pair<int, int>> pairs;
      for (int u = 0; u < nv; ++u) {
        for (int v = u; v < nv; ++v) pairs.emplace_back(u, v);
      }
      std::set<std::vector<std::pair<int, int>>> seen;
      std::vector<int> choice(static_cast<std::size_t>(ne), 0);
      const auto visit = [&]() {
        std::vector<std::pair<int, int>> edges;
        for (int c : choice) edges.push_back(pairs[static_cast<std::size_t>(c)]);
        std::vector<int> perm(static_cast<std::size_t>(nv));
        for (int i = 0; i < nv; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::vector<std::pair<int, int>> best;
        do {
          std::vector<std::pair<int, int>> relabeled;
          for (auto [u, v] : edges) {
            int a = perm[static_cast<std::size_t>(u)];
            int b = perm[static_cast<std::size_t>(v)];
            relabeled.emplace_back(std::min(a, b), std::max(a, b));
          }
          std::sort(relabeled.begin(), relabeled.end());
          if (best.empty() || relabeled < best) best = relabeled;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!seen.insert(best).second) return;
        std::vector<os::Graph::Edge> ge;
        for (std::size_t e = 0; e < best.size(); ++e) {
          ge.push_back({best[e].first, best[e].second, std::string(1, static_cast<char>('a' + e))});
        }
        os::Graph g(nv, ge);
        if (g.is_connected() && g.is_core()) out.push_back(g);
      };
      // Non-decreasing choice sequences enumerate edge multisets.
      for (;;) {
        visit();
        int pos = ne - 1;
        while (pos >= 0 && choice[static_cast<std::size_t>(pos)] == static_cast<int>(pairs.size()) - 1) --pos;
        if (pos < 0) break;
        ++choice[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < ne; ++q) choice[static_cast<std::size_t>(q)] = choice[static_cast<std::size_t>(pos)];
      }
    }
  }
  return out;
}

// Every cyclically reduced closed walk of length 1..max_len, reported once
// per walk (rotations and inversions repeat).
template <class F>
void for_each_immersed_loop(const os::Graph& g, int max_len, F&& f) {
  std::vector<os::OrientedEdge> walk;
  const auto extend = [&](auto&& self) -> void {
    const os::OrientedEdge first = walk.front();
    const os::OrientedEdge last = walk.back();
    if (g.head(last) == g.tail(first) && first != last.inverse()) f(walk);
    if (static_cast<int>(walk.size()) == max_len) return;
    for (os::Direction next : g.directions_at(g.head(last))) {
      if (next == last.inverse()) continue;
      walk.push_back(next);
      self(self);
      walk.pop_back();
    }
  };
  for (int code = 0; code < g.num_directions(); ++code) {
    walk.assign(1, os::OrientedEdge::from_code(code));
    extend(extend);
  }
}

// Crossing-count vectors of all cyclically reduced closed walks of length
// 1..max_len, by dynamic programming over (first direction, last direction,
// counts).
inline std::set<std::vector<int>> immersed_count_vectors(const os::Graph& g, int max_len) {
  using State = std::pair<int, std::vector<int>>;  // last direction code, counts
  std::set<std::vector<int>> out;
  for (int first = 0; first < g.num_directions(); ++first) {
    const os::OrientedEdge f = os::OrientedEdge::from_code(first);
    std::set<State> layer;
    std::vector<int> counts(static_cast<std::size_t>(g.num_edges()), 0);
    counts[static_cast<std::size_t>(f.edge())] = 1;
    layer.insert({first, counts});
    for (int len = 1; len <= max_len && !layer.empty(); ++len) {
      std::set<State> next_layer;
      for (const auto& [last_code, c] : layer) {
        const os::OrientedEdge last = os::OrientedEdge::from_code(last_code);
        if (g.head(last) == g.tail(f) && f != last.inverse()) out.insert(c);
        if (len == max_len) continue;
        for (os::Direction next : g.directions_at(g.head(last))) {
          if (next == last.inverse()) continue;
          std::vector<int> nc = c;
          ++nc[static_cast<std::size_t>(next.edge())];
          next_layer.insert({next.code(), std::move(nc)});
        }
      }
      layer = std::move(next_layer);
    }
  }
  return out;
}

// Embedded circles of a graph, each as a sorted edge set, by DFS over edge
// subsets in which every touched vertex has valence 2 and which are connected.
inline std::set<os::EdgeSet> embedded_circles(const os::Graph& g) {
  std::set<os::EdgeSet> out;
  const int ne = g.num_edges();
  for (std::uint32_t mask = 1; mask < (1u << ne); ++mask) {
    os::EdgeSet s;
    for (int e = 0; e < ne; ++e) {
      if ((mask >> e) & 1u) s.push_back(e);
    }
    std::vector<int> val(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int e : s) {
      ++val[static_cast<std::size_t>(g.edge(e).tail)];
      ++val[static_cast<std::size_t>(g.edge(e).head)];
    }
    bool ok = true;
    for (int v : val) ok = ok && (v == 0 || v == 2);
    if (ok && os::num_components(g, s) == 1) out.insert(s);
  }
  return out;
}

}  // namespace testing
