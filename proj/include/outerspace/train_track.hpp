#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "outerspace/graph_map.hpp"
#include "outerspace/lipschitz.hpp"
#include "outerspace/point.hpp"
#include "outerspace/transition.hpp"

namespace outerspace {

/// A marked graph with a self-map representing an outer automorphism.
/// `name_counter` feeds fresh edge names for subdivisions.
struct Representative {
  MarkedGraph marked;
  GraphMap map;
  int name_counter = 0;

  const Graph& graph() const { return marked.graph; }
};

/// The rose with the identity marking and the map x_i ↦ phi(x_i).
Representative rose_representative(const Automorphism& phi);

/// Conjugates the self-map by q: the new map is q∘map∘section, reduced,
/// and the marking is pushed through q.
Representative push_representative(const Representative& r, const GraphQuotient& q);

/// Collapses empty-image edges, retracts valence-1 vertices and removes
/// valence-2 vertices until none remain. Throws RankCollapseError when the
/// empty-image edges contain a cycle.
Representative normalize(const Representative& r);

/// Folds a turn whose directions have equal derivative: both edges are
/// subdivided so that the common prefix of their images is a single edge on
/// each side, and those edges are identified. Throws DomainError on a
/// degenerate or legal turn, RankCollapseError when the fold kills a loop.
/// Turns in `tracked` are replaced by their images in the folded graph.
Representative fold(const Representative& r, const Turn& turn, std::vector<Turn>* tracked = nullptr);

/// Collapses an invariant forest.
Representative collapse_forest(const Representative& r, const EdgeSet& forest);

/// The iterated gate structure when every edge image crosses only legal
/// turns; nothing otherwise. Throws UndefinedDerivativeError on a collapsed
/// edge.
std::optional<TrainTrackStructure> is_train_track(const GraphMap& m);

/// For a map sending edges to single edges: the least k <= cap with φ^k the
/// identity on oriented edges.
std::optional<int> finite_order_check(const GraphMap& m, int cap = 1000);

struct TrainTrackCertificate {
  Representative rep;
  TrainTrackStructure structure;
  double lambda = 0.0;
  Metric<double> metric;
  TransitionMatrix matrix;
};

struct ReductionCertificate {
  Representative rep;
  EdgeSet subset;
  TransitionMatrix matrix;
};

struct FiniteOrderCertificate {
  Representative rep;
  int order = 0;
};

struct NonTerminationCertificate {
  std::string reason;
};

using Certificate =
    std::variant<TrainTrackCertificate, ReductionCertificate, FiniteOrderCertificate, NonTerminationCertificate>;

struct TraceEntry {
  int round = 0;
  int edges = 0;
  std::optional<double> lambda;
  int potential = 0;
  std::string move;
};

/// "round edges lambda potential move", lambda printed with 12 significant
/// digits or '-'.
std::string format_trace_line(const TraceEntry& t);

struct TrainTrackRun {
  Certificate certificate;
  std::vector<TraceEntry> trace;
  std::vector<int> lambda_increases;  // rounds where λ rose by more than kTolerance
};

/// Starting from the rose, repeatedly normalizes, looks for finite order or
/// an invariant subgraph, computes the Perron–Frobenius metric and tests the
/// train track property. When it fails, the turns of fold_chain are folded
/// one per round, last first, before the next normalization. If λ has not
/// dropped for 2(6n−6)+10 rounds, the order of phi in Out(F_n) is tested
/// once on words (outer_order) and a finite order ends the run.
TrainTrackRun find_train_track(const Automorphism& phi, int max_iters = 10000);

/// Derivative orbit T, Dφ(T), ..., up to the last nondegenerate turn, of the
/// illegal turn crossed by an edge image that degenerates in the fewest steps
/// (first edge, first position on ties). Without such a turn, the orbit of
/// the first two directions at a vertex with fewer than two gates. Empty when
/// the map is a train track with at least two gates everywhere.
std::vector<Turn> fold_chain(const GraphMap& m, const TrainTrackStructure& s);

/// Last turn of fold_chain: its two directions have equal derivative.
std::optional<Turn> turn_to_fold(const GraphMap& m, const TrainTrackStructure& s);

/// Thin-part reducibility: scans δ_i = ε_n·e^{−(D+1)i}, i = 0..B_n, for two
/// consecutive equal nonempty ε-cores whose edges map back into the core.
/// Throws DomainError unless the displacement is below D + 1.
std::optional<EdgeSet> thin_chain_reduction(const OuterSpacePoint<double>& x, const Automorphism& phi, double d_bound);

}  // namespace outerspace
