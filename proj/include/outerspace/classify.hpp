#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "outerspace/train_track.hpp"

namespace outerspace {

struct Elliptic {
  int order = 0;
};

struct Hyperbolic {
  double lambda = 0.0;
  OuterSpacePoint<double> point;  // the representative graph at the minimizing metric
  SimplexMinReport minimum;
  bool from_reduction = false;  // minimum realized although a reduction was found
};

/// Reducibility with a minimizing sequence escaping to the thin part. Only
/// evidence, not a proof that the infimum is not attained.
struct ParabolicSuspect {
  EdgeSet subgraph;
  std::vector<SimplexMinReport> floors;  // one per floor, same order as requested
  std::optional<double> restricted_lambda;
};

struct Inconclusive {
  std::string reason;
};

using Classification = std::variant<Elliptic, Hyperbolic, ParabolicSuspect, Inconclusive>;

struct ClassifyOptions {
  int max_iters = 10000;
  std::vector<double> floors{1e-2, 1e-3, 1e-4};
  double hyperbolic_floor = 1e-6;
  double tol = kTolerance;
};

struct ClassifyResult {
  Classification kind;
  TrainTrackRun run;
};

/// Runs the train track search and inspects the certificate: finite order
/// gives Elliptic; a train track with λ > 1 and an interior simplex minimum
/// gives Hyperbolic; a reduction whose simplex minima hit the floor at every
/// floor gives ParabolicSuspect.
ClassifyResult classify(const Automorphism& phi, const ClassifyOptions& options = {});

std::string classification_name(const Classification& c);

}  // namespace outerspace
