#include "outerspace/graph_map.hpp"

#include <algorithm>
#include <map>

#include "outerspace/errors.hpp"

namespace outerspace {

std::vector<OrientedEdge> GraphMap::image(OrientedEdge o) const {
  const auto& forward = edge_image.at(static_cast<std::size_t>(o.edge()));
  return o.reversed() ? inverse_word(forward) : forward;
}

std::vector<OrientedEdge> GraphMap::raw_image(std::span<const OrientedEdge> p) const {
  std::vector<OrientedEdge> out;
  for (OrientedEdge o : p) {
    const auto img = image(o);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

EdgePath GraphMap::image_of(const EdgePath& p) const {
  const auto raw = raw_image(p.edges);
  if (p.closed) return EdgePath{cyclic_reduce(raw), true};
  return EdgePath{free_reduce(raw), false};
}

void check_map(const GraphMap& m) {
  if (static_cast<int>(m.vertex_image.size()) != m.domain.num_vertices() ||
      static_cast<int>(m.edge_image.size()) != m.domain.num_edges()) {
    throw DomainError("graph map has the wrong number of vertex or edge images");
  }
  for (int v : m.vertex_image) {
    if (v < 0 || v >= m.codomain.num_vertices()) throw DomainError("vertex image out of range");
  }
  for (int e = 0; e < m.domain.num_edges(); ++e) {
    const auto& img = m.edge_image[static_cast<std::size_t>(e)];
    const OrientedEdge o(e, false);
    const int from = m.vertex_image[static_cast<std::size_t>(m.domain.tail(o))];
    const int to = m.vertex_image[static_cast<std::size_t>(m.domain.head(o))];
    for (OrientedEdge x : img) {
      if (x.edge() < 0 || x.edge() >= m.codomain.num_edges()) throw DomainError("edge image out of range");
    }
    if (img.empty()) {
      if (from != to) throw DomainError("collapsed edge with distinct endpoint images");
      continue;
    }
    check_path(m.codomain, EdgePath{img, false});
    if (m.codomain.tail(img.front()) != from || m.codomain.head(img.back()) != to) {
      throw DomainError("edge image does not respect the vertex map");
    }
  }
}

GraphMap difference_of_markings(const MarkedGraph& x, const MarkedGraph& y) {
  if (x.rank() != y.rank()) throw DomainError("rank mismatch between marked graphs");
  GraphMap m;
  m.domain = x.graph;
  m.codomain = y.graph;
  m.vertex_image.assign(static_cast<std::size_t>(x.graph.num_vertices()), y.base);
  for (int e = 0; e < x.graph.num_edges(); ++e) {
    m.edge_image.push_back(apply_marking(y, x.inverse_marking[static_cast<std::size_t>(e)]).edges);
  }
  m.self_map = x.graph == y.graph;
  return m;
}

GraphMap representative_map(const MarkedGraph& x, const Automorphism& phi) {
  if (x.rank() != phi.rank()) throw DomainError("rank mismatch between marked graph and automorphism");
  GraphMap m;
  m.domain = x.graph;
  m.codomain = x.graph;
  m.vertex_image.assign(static_cast<std::size_t>(x.graph.num_vertices()), x.base);
  for (int e = 0; e < x.graph.num_edges(); ++e) {
    m.edge_image.push_back(apply_marking(x, phi.apply(x.inverse_marking[static_cast<std::size_t>(e)])).edges);
  }
  m.self_map = true;
  return m;
}

namespace {

std::vector<Word> pulled_back_words(const GraphMap& m, const MarkedGraph& x, const MarkedGraph& y) {
  std::vector<Word> out;
  for (const EdgePath& loop : x.marking) {
    // The image of a based loop is a closed path at the image of the base;
    // reading it through g_y gives a word up to a conjugator shared by all i.
    out.push_back(apply_inverse_marking(y, m.raw_image(loop.edges)));
  }
  return out;
}

}  // namespace

bool is_marking_compatible(const GraphMap& m, const MarkedGraph& x, const MarkedGraph& y) {
  if (x.rank() != y.rank()) return false;
  return common_conjugator(pulled_back_words(m, x, y)).has_value();
}

bool represents(const GraphMap& m, const MarkedGraph& x, const Automorphism& phi_inverse) {
  std::vector<Word> words = pulled_back_words(m, x, x);
  for (Word& w : words) w = phi_inverse.apply(w);
  return common_conjugator(words).has_value();
}

Direction derivative(const GraphMap& m, Direction d) {
  const auto& forward = m.edge_image.at(static_cast<std::size_t>(d.edge()));
  if (forward.empty()) throw UndefinedDerivativeError("derivative undefined on a collapsed edge");
  return d.reversed() ? forward.back().inverse() : forward.front();
}

// ---- train track structures ----------------------------------------------

TrainTrackStructure::TrainTrackStructure(const Graph& g, std::span<const int> gate_key)
    : gate_(static_cast<std::size_t>(g.num_directions()), -1),
      vertex_(static_cast<std::size_t>(g.num_directions()), -1),
      num_vertices_(g.num_vertices()) {
  std::map<std::pair<int, int>, int> least;
  for (int code = 0; code < g.num_directions(); ++code) {
    const int key = gate_key[static_cast<std::size_t>(code)];
    const Direction d = Direction::from_code(code);
    vertex_[static_cast<std::size_t>(code)] = g.tail(d);
    if (key < 0) continue;
    auto [it, inserted] = least.try_emplace({g.tail(d), key}, code);
    gate_[static_cast<std::size_t>(code)] = it->second;
  }
}

bool TrainTrackStructure::same_gate(Direction a, Direction b) const {
  return designated(a) && designated(b) && gate(a) == gate(b);
}

bool TrainTrackStructure::is_legal(const Turn& t) const {
  return !t.degenerate() && designated(t.first) && designated(t.second) && gate(t.first) != gate(t.second);
}

std::vector<std::vector<Direction>> TrainTrackStructure::gates_at(int v) const {
  std::vector<std::vector<Direction>> out;
  for (const auto& gate : gates()) {
    if (vertex_[static_cast<std::size_t>(gate.front().code())] == v) out.push_back(gate);
  }
  return out;
}

std::vector<std::vector<Direction>> TrainTrackStructure::gates() const {
  std::map<int, std::vector<Direction>> blocks;
  for (std::size_t code = 0; code < gate_.size(); ++code) {
    if (gate_[code] >= 0) blocks[gate_[code]].push_back(Direction::from_code(static_cast<int>(code)));
  }
  std::vector<std::vector<Direction>> out;
  for (auto& [key, block] : blocks) out.push_back(std::move(block));
  return out;
}

int TrainTrackStructure::num_gates(int v) const {
  int count = 0;
  for (std::size_t code = 0; code < gate_.size(); ++code) {
    if (vertex_[code] == v && gate_[code] == static_cast<int>(code)) ++count;
  }
  return count;
}

int TrainTrackStructure::excess_gates() const {
  int total = 0;
  for (int v = 0; v < num_vertices_; ++v) total += std::max(0, num_gates(v) - 2);
  return total;
}

TrainTrackStructure gates_one_step(const GraphMap& m, const EdgeSet& subset) {
  std::vector<int> key(static_cast<std::size_t>(m.domain.num_directions()), -1);
  for (int e : subset) {
    for (bool rev : {false, true}) {
      const Direction d(e, rev);
      key[static_cast<std::size_t>(d.code())] = derivative(m, d).code();
    }
  }
  return TrainTrackStructure(m.domain, key);
}

std::vector<int> iterated_derivative(const GraphMap& m, int steps) {
  if (!m.self_map) throw DomainError("iterated derivative needs a self-map");
  const int n = m.domain.num_directions();
  std::vector<int> step(static_cast<std::size_t>(n));
  for (int code = 0; code < n; ++code) step[static_cast<std::size_t>(code)] = derivative(m, Direction::from_code(code)).code();
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int code = 0; code < n; ++code) out[static_cast<std::size_t>(code)] = code;
  for (int k = 0; k < steps; ++k) {
    for (int& c : out) c = step[static_cast<std::size_t>(c)];
  }
  return out;
}

TrainTrackStructure gates_iterated(const GraphMap& m, const EdgeSet& subset) {
  // After |directions| steps every orbit sits on its periodic cycle, where the
  // derivative is injective, so later coincidences already show up here.
  const std::vector<int> far = iterated_derivative(m, std::max(1, m.domain.num_directions()));
  std::vector<int> key(static_cast<std::size_t>(m.domain.num_directions()), -1);
  for (int e : subset) {
    for (bool rev : {false, true}) {
      const Direction d(e, rev);
      key[static_cast<std::size_t>(d.code())] = far[static_cast<std::size_t>(d.code())];
    }
  }
  return TrainTrackStructure(m.domain, key);
}

bool is_legal(const EdgePath& p, const TrainTrackStructure& s) {
  for (const Turn& t : turns_of(p)) {
    if (!s.is_legal(t)) return false;
  }
  return true;
}

EdgePath find_legal_loop(const Graph& g, const EdgeSet& subset, const TrainTrackStructure& s) {
  if (subset.empty()) throw PreconditionError("legal loop requested in an empty subgraph");
  for (int v : support_vertices(g, subset)) {
    if (s.num_gates(v) < 2) throw PreconditionError("vertex " + std::to_string(v) + " has fewer than two gates");
  }
  std::vector<OrientedEdge> seq{OrientedEdge(subset.front(), false)};
  std::vector<int> position(static_cast<std::size_t>(g.num_directions()), -1);
  position[static_cast<std::size_t>(seq.front().code())] = 0;
  for (;;) {
    const OrientedEdge incoming = seq.back().inverse();
    std::optional<Direction> next;
    for (Direction d : g.directions_at(g.head(seq.back()))) {
      if (contains(subset, d.edge()) && s.is_legal(Turn(incoming, d))) {
        next = d;
        break;
      }
    }
    if (!next) throw PreconditionError("no legal continuation");
    const int at = position[static_cast<std::size_t>(next->code())];
    if (at >= 0) {
      return EdgePath{std::vector<OrientedEdge>(seq.begin() + at, seq.end()), true};
    }
    position[static_cast<std::size_t>(next->code())] = static_cast<int>(seq.size());
    seq.push_back(*next);
  }
}

}  // namespace outerspace
