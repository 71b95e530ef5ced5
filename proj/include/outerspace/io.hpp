#pragma once

#include <string>

#include <json.hpp>

#include "outerspace/classify.hpp"
#include "outerspace/lipschitz.hpp"
#include "outerspace/train_track.hpp"

namespace outerspace {

using Json = nlohmann::json;

/// Point file:
///   {"vertices": 1,
///    "edges": [{"id": 0, "name": "a", "from": 0, "to": 0}, ...],
///    "lengths": ["1/4", "3/4"],            // "p/q", decimal strings or numbers
///    "marking": ["a", "b"],                // optional: paths by edge label
///    "inverse_marking": ["a", "b"],        // optional: words per edge
///    "base": 0}                            // optional
/// Missing markings are read off a spanning tree; a missing inverse marking
/// is recomputed. Decimal lengths whose sum is within 1e-9 of 1 are rescaled.
OuterSpacePoint<Rational> point_from_json(const Json& j);
OuterSpacePoint<Rational> read_point_file(const std::string& path);

Json point_to_json(const OuterSpacePoint<Rational>& x);
Json point_to_json(const OuterSpacePoint<double>& x);

Json graph_to_json(const Graph& g);
Json edge_set_to_json(const Graph& g, const EdgeSet& s);

Json traintrack_report(const TrainTrackRun& run);
Json distance_report(const OuterSpacePoint<Rational>& x, const OuterSpacePoint<Rational>& y,
                     const DistanceReport<Rational>& r);
Json candidates_report(const Graph& g, const std::vector<CandidateLoop>& loops);
Json simplex_report(const Graph& g, const SimplexMinReport& r);
Json classify_report(const ClassifyResult& r);

/// Status string of a certificate: train_track, reducible, finite_order or
/// max_iters.
std::string certificate_status(const Certificate& c);

}  // namespace outerspace
