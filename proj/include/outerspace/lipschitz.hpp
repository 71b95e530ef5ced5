#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "outerspace/graph_map.hpp"
#include "outerspace/point.hpp"

namespace outerspace {

template <class Scalar>
struct RatioEntry {
  CandidateLoop candidate;
  EdgePath image;  // cyclically reduced
  Scalar ratio;
};

template <class Scalar>
struct DistanceReport {
  Scalar sigma;
  double log_sigma = 0.0;
  std::size_t witness = 0;  // index into table
  std::vector<RatioEntry<Scalar>> table;

  const CandidateLoop& witness_loop() const { return table.at(witness).candidate; }
};

/// Maximal stretch of candidate loops of x under m, measured in y.
template <class Scalar>
DistanceReport<Scalar> sigma(const OuterSpacePoint<Scalar>& x, const OuterSpacePoint<Scalar>& y, const GraphMap& m) {
  if (!(m.domain == x.graph()) || !(m.codomain == y.graph())) throw DomainError("map does not match the points");
  DistanceReport<Scalar> report;
  for (CandidateLoop& c : candidates(x.graph())) {
    EdgePath image = m.image_of(c.loop);
    if (image.empty()) throw InternalError("candidate loop has nullhomotopic image");
    Scalar ratio = y.metric.length(image.edges) / x.metric.length(c.loop.edges);
    report.table.push_back(RatioEntry<Scalar>{std::move(c), std::move(image), std::move(ratio)});
  }
  if (report.table.empty()) throw DomainError("graph has no candidate loops");
  for (std::size_t i = 1; i < report.table.size(); ++i) {
    if (report.table[i].ratio > report.table[report.witness].ratio) report.witness = i;
  }
  report.sigma = report.table[report.witness].ratio;
  report.log_sigma = std::log(to_double(report.sigma));
  return report;
}

/// sigma through the difference of markings y∘g_x.
template <class Scalar>
DistanceReport<Scalar> sigma(const OuterSpacePoint<Scalar>& x, const OuterSpacePoint<Scalar>& y) {
  if (x.rank() != y.rank()) throw DomainError("rank mismatch between points");
  return sigma(x, y, difference_of_markings(x.marked, y.marked));
}

template <class Scalar>
double distance(const OuterSpacePoint<Scalar>& x, const OuterSpacePoint<Scalar>& y) {
  return sigma(x, y).log_sigma;
}

/// Distance report from x to x·phi, via the self-map representing phi.
template <class Scalar>
DistanceReport<Scalar> displacement(const OuterSpacePoint<Scalar>& x, const Automorphism& phi) {
  if (x.rank() != phi.rank()) throw DomainError("rank mismatch between point and automorphism");
  // x·phi has the graph and metric of x; only the marking moves.
  return sigma(x, x, representative_map(x.marked, phi));
}

struct SimplexMinReport {
  Metric<double> metric;
  double lambda = 0.0;
  double floor = 0.0;
  std::vector<std::pair<double, double>> trace;  // (lower, upper) after each step
  bool boundary_flag = false;
  EdgeSet floor_edges;  // edges pinned to the floor at every optimum found
};

/// Minimizes the maximal candidate stretch of a fixed self-map over the
/// metric simplex {ℓ ≥ floor, Σℓ = 1} by bisection on λ; each step solves a
/// linear program in ℓ. An edge counts as pinned when its largest feasible
/// length stays within tol of the floor. Throws DomainError when
/// floor ≥ 1/|edges|.
SimplexMinReport min_displacement_on_simplex(const GraphMap& self_map, double floor, double tol = kTolerance);

/// Same for the rows of candidate crossing counts (A = image counts,
/// C = domain counts) of an arbitrary self-map description.
SimplexMinReport min_ratio_on_simplex(int num_edges, const std::vector<std::vector<int>>& image_counts,
                                      const std::vector<std::vector<int>>& domain_counts, double floor,
                                      double tol = kTolerance);

}  // namespace outerspace
