#include <algorithm>
#include <set>

#include "outerspace/point.hpp"

namespace outerspace {

namespace {

struct Enumerator {
  const Graph& g;
  std::vector<char> usable;  // per edge
  OrientedEdge start;
  std::vector<OrientedEdge> path;
  std::vector<int> counts;
  std::set<std::vector<OrientedEdge>> found;

  // Only letters o with o >= start and o^{-1} >= start; every loop is then
  // reached from the least letter of its canonical form.
  bool allowed(OrientedEdge o) const {
    return usable[static_cast<std::size_t>(o.edge())] != 0 && o >= start && o.inverse() >= start &&
           counts[static_cast<std::size_t>(o.edge())] < 2;
  }

  void extend() {
    const OrientedEdge cur = path.back();
    const int v = g.head(cur);
    if (v == g.tail(start) && cur != start.inverse()) found.insert(canonical_cyclic_word(path));
    for (Direction d : g.directions_at(v)) {
      if (d == cur.inverse() || !allowed(d)) continue;
      path.push_back(d);
      ++counts[static_cast<std::size_t>(d.edge())];
      extend();
      --counts[static_cast<std::size_t>(d.edge())];
      path.pop_back();
    }
  }
};

bool shortlex_less(const std::vector<OrientedEdge>& a, const std::vector<OrientedEdge>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<CandidateLoop> candidates(const Graph& g, const EdgeSet& subset) {
  Enumerator en{g, std::vector<char>(static_cast<std::size_t>(g.num_edges()), 0), {}, {}, {}, {}};
  for (int e : subset) en.usable[static_cast<std::size_t>(e)] = 1;
  en.counts.assign(static_cast<std::size_t>(g.num_edges()), 0);
  for (int code = 0; code < g.num_directions(); ++code) {
    en.start = OrientedEdge::from_code(code);
    if (en.usable[static_cast<std::size_t>(en.start.edge())] == 0) continue;
    en.path = {en.start};
    en.counts[static_cast<std::size_t>(en.start.edge())] = 1;
    en.extend();
    en.counts[static_cast<std::size_t>(en.start.edge())] = 0;
  }
  std::vector<std::vector<OrientedEdge>> words(en.found.begin(), en.found.end());
  std::sort(words.begin(), words.end(), shortlex_less);
  std::vector<CandidateLoop> out;
  out.reserve(words.size());
  for (auto& w : words) {
    std::vector<int> counts = crossing_counts(g, w);
    out.push_back(CandidateLoop{EdgePath{std::move(w), true}, std::move(counts)});
  }
  return out;
}

std::vector<CandidateLoop> candidates(const Graph& g) { return candidates(g, all_edges(g)); }

}  // namespace outerspace
