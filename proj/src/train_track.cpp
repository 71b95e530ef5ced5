#include "outerspace/train_track.hpp"

#include <cmath>
#include <cstdio>

#include "outerspace/errors.hpp"

namespace outerspace {

std::optional<TrainTrackStructure> is_train_track(const GraphMap& m) {
  const TrainTrackStructure s = gates_iterated(m, all_edges(m.domain));
  for (int e = 0; e < m.domain.num_edges(); ++e) {
    const EdgePath img{m.edge_image[static_cast<std::size_t>(e)], false};
    if (!is_reduced(img)) return std::nullopt;
    for (const Turn& t : turns_of(img)) {
      if (!s.is_legal(t)) return std::nullopt;
    }
  }
  return s;
}

std::optional<int> finite_order_check(const GraphMap& m, int cap) {
  const int n = m.domain.num_directions();
  std::vector<int> step(static_cast<std::size_t>(n));
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int code = 0; code < n; ++code) {
    const auto img = m.image(Direction::from_code(code));
    if (img.size() != 1) return std::nullopt;
    step[static_cast<std::size_t>(code)] = img.front().code();
    if (hit[static_cast<std::size_t>(img.front().code())]++ != 0) return std::nullopt;
  }
  std::vector<int> cur = step;
  for (int k = 1; k <= cap; ++k) {
    bool identity = true;
    for (int code = 0; code < n && identity; ++code) identity = cur[static_cast<std::size_t>(code)] == code;
    if (identity) return k;
    for (int& c : cur) c = step[static_cast<std::size_t>(c)];
  }
  return std::nullopt;
}

std::vector<Turn> fold_chain(const GraphMap& m, const TrainTrackStructure& s) {
  const auto orbit = [&](Turn t) {
    std::vector<Turn> out{t};
    for (int guard = 0; guard <= m.domain.num_directions(); ++guard) {
      const Turn next(derivative(m, t.first), derivative(m, t.second));
      if (next.degenerate()) return out;
      out.push_back(t = next);
    }
    throw InternalError("illegal turn never degenerates under the derivative");
  };
  std::vector<Turn> best;
  for (int e = 0; e < m.domain.num_edges(); ++e) {
    for (const Turn& t : turns_of(EdgePath{m.edge_image[static_cast<std::size_t>(e)], false})) {
      if (s.is_legal(t)) continue;
      std::vector<Turn> candidate = orbit(t);
      if (best.empty() || candidate.size() < best.size()) best = std::move(candidate);
    }
  }
  if (!best.empty()) return best;
  for (int v = 0; v < m.domain.num_vertices(); ++v) {
    const auto dirs = m.domain.directions_at(v);
    if (dirs.size() >= 2 && s.num_gates(v) < 2) return orbit(Turn(dirs[0], dirs[1]));
  }
  return {};
}

std::optional<Turn> turn_to_fold(const GraphMap& m, const TrainTrackStructure& s) {
  const std::vector<Turn> chain = fold_chain(m, s);
  if (chain.empty()) return std::nullopt;
  return chain.back();
}

std::string format_trace_line(const TraceEntry& t) {
  std::string lambda = "-";
  if (t.lambda) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *t.lambda);
    lambda = buf;
  }
  return std::to_string(t.round) + " " + std::to_string(t.edges) + " " + lambda + " " + std::to_string(t.potential) +
         " " + t.move;
}

namespace {

std::string format_edges(const Graph& g, const EdgeSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += g.name(s[i]);
  }
  return out + "}";
}

std::string format_turn(const Graph& g, const Turn& t) {
  return "{" + g.label(t.first) + "," + g.label(t.second) + "}";
}

}  // namespace

TrainTrackRun find_train_track(const Automorphism& phi, int max_iters) {
  if (phi.rank() < 2) throw DomainError("train tracks need rank at least 2");
  (void)phi.inverse();  // MarkingIntegrityError for a non-invertible map
  TrainTrackRun run;
  Representative rep = rose_representative(phi);
  std::optional<double> last_lambda;
  // Rest of a fold chain: folding T_{k-1} makes T_{k-2} degenerate after one
  // step, and so on, until the fold of T makes an edge image backtrack.
  std::vector<Turn> pending;
  // Finite-order classes without an isometry on any graph the folds reach
  // keep λ constant forever. Once λ has stalled this long, test the order of
  // phi in Out(F_n) on words.
  const int stall_limit = 2 * (6 * phi.rank() - 6) + 10;
  std::optional<double> best_lambda;
  int stalled = 0;
  bool order_tested = false;
  for (int round = 0; round < max_iters; ++round) {
    TraceEntry entry;
    entry.round = round;
    try {
      if (!pending.empty()) {
        const Turn t = pending.back();
        pending.pop_back();
        const auto foldable = [&] {
          if (t.degenerate()) return false;
          const auto p1 = rep.map.image(t.first);
          const auto p2 = rep.map.image(t.second);
          return !p1.empty() && !p2.empty() && p1.front() == p2.front();
        };
        if (foldable()) {
          const Graph& g = rep.graph();
          entry.edges = g.num_edges();
          entry.potential = gates_one_step(rep.map, all_edges(g)).excess_gates();
          entry.move = "fold " + format_turn(g, t);
          run.trace.push_back(entry);
          rep = fold(rep, t, &pending);
          continue;
        }
        pending.clear();
      }
      rep = normalize(rep);
      const Graph& g = rep.graph();
      entry.edges = g.num_edges();
      entry.potential = gates_one_step(rep.map, all_edges(g)).excess_gates();

      if (auto k = finite_order_check(rep.map)) {
        entry.lambda = 1.0;
        entry.move = "finite_order " + std::to_string(*k);
        run.trace.push_back(entry);
        run.certificate = FiniteOrderCertificate{rep, *k};
        return run;
      }

      const TransitionMatrix matrix = transition_matrix(rep.map);
      if (auto cls = closed_class(matrix, g)) {
        if (!is_forest(g, *cls)) {
          entry.move = "reduction " + format_edges(g, *cls);
          run.trace.push_back(entry);
          run.certificate = ReductionCertificate{rep, *cls, matrix};
          return run;
        }
        // Only forests are invariant: collapse their union while it stays a
        // forest, otherwise the union itself is the invariant subgraph.
        EdgeSet forest;
        for (const EdgeSet& c : closed_classes(matrix)) {
          if (static_cast<int>(c.size()) == g.num_edges() || !is_forest(g, c)) continue;
          EdgeSet merged;
          std::set_union(forest.begin(), forest.end(), c.begin(), c.end(), std::back_inserter(merged));
          if (is_forest(g, merged)) forest = std::move(merged);
        }
        entry.move = "collapse_forest " + format_edges(g, forest);
        run.trace.push_back(entry);
        rep = collapse_forest(rep, forest);
        continue;
      }

      const PfEigen pf = pf_eigen(matrix);
      entry.lambda = pf.lambda;
      if (last_lambda && pf.lambda > *last_lambda * (1.0 + kTolerance)) run.lambda_increases.push_back(round);
      last_lambda = pf.lambda;
      if (!best_lambda || pf.lambda < *best_lambda * (1.0 - kTolerance)) {
        best_lambda = pf.lambda;
        stalled = 0;
      } else if (++stalled >= stall_limit && !order_tested) {
        order_tested = true;
        if (auto k = outer_order(phi)) {
          entry.move = "finite_order " + std::to_string(*k) + " (word check)";
          run.trace.push_back(entry);
          run.certificate = FiniteOrderCertificate{rep, *k};
          return run;
        }
      }

      const auto structure = is_train_track(rep.map);
      std::vector<Turn> chain;
      if (structure) chain = fold_chain(rep.map, *structure);
      if (structure && chain.empty()) {
        entry.move = "train_track";
        run.trace.push_back(entry);
        run.certificate = TrainTrackCertificate{rep, *structure, pf.lambda, Metric<double>::from_weights(pf.left), matrix};
        return run;
      }
      if (chain.empty()) chain = fold_chain(rep.map, gates_iterated(rep.map, all_edges(g)));
      if (chain.empty()) throw InternalError("map is not a train track but no turn to fold was found");
      const Turn turn = chain.back();
      chain.pop_back();
      pending = std::move(chain);
      entry.move = "fold " + format_turn(g, turn);
      run.trace.push_back(entry);
      rep = fold(rep, turn, &pending);
    } catch (const RankCollapseError& e) {
      entry.move = std::string("invalid ") + e.what();
      run.trace.push_back(entry);
      run.certificate = NonTerminationCertificate{std::string("rank collapse: ") + e.what()};
      return run;
    } catch (const NumericError& e) {
      entry.move = std::string("invalid ") + e.what();
      run.trace.push_back(entry);
      run.certificate = NonTerminationCertificate{std::string("numeric failure: ") + e.what()};
      return run;
    }
  }
  run.certificate = NonTerminationCertificate{"max_iters"};
  return run;
}

std::optional<EdgeSet> thin_chain_reduction(const OuterSpacePoint<double>& x, const Automorphism& phi, double d_bound) {
  const double disp = displacement(x, phi).log_sigma;
  if (!(disp < d_bound + 1.0)) throw DomainError("displacement is not below the bound plus one");
  const int n = x.rank();
  const int b = chain_bound(n);
  std::vector<EdgeSet> cores;
  for (int i = 0; i <= b; ++i) {
    const double delta = epsilon_n(n) * std::exp(-(d_bound + 1.0) * i);
    cores.push_back(epsilon_core(x, delta));
  }
  const GraphMap m = representative_map(x.marked, phi);
  for (int i = 0; i < b; ++i) {
    const EdgeSet& c = cores[static_cast<std::size_t>(i)];
    if (c.empty() || c != cores[static_cast<std::size_t>(i + 1)]) continue;
    bool inside = true;
    for (const CandidateLoop& loop : candidates(x.graph(), c)) {
      for (OrientedEdge o : m.image_of(loop.loop).edges) inside = inside && contains(c, o.edge());
      if (!inside) break;
    }
    if (inside) return c;
  }
  return std::nullopt;
}

}  // namespace outerspace
