#include "outerspace/io.hpp"

#include <fstream>
#include <sstream>

#include "outerspace/errors.hpp"

namespace outerspace {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double rounded(double v) { return round_report(v); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("point file is missing \"") + key + "\"", 0);
  return j.at(key);
}

Rational length_value(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  // Numbers are read through their JSON spelling, so 0.1 stays 1/10.
  if (v.is_number()) return parse_rational(v.dump());
  throw ParseError("edge length must be a number or a string", 0);
}

Json metric_json(const Metric<double>& m) {
  Json out = Json::array();
  for (int e = 0; e < m.size(); ++e) out.push_back(rounded(m[e]));
  return out;
}

Json matrix_json(const TransitionMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

Json edge_images_json(const GraphMap& m) {
  Json out = Json::array();
  for (int e = 0; e < m.domain.num_edges(); ++e) {
    out.push_back({{"edge", m.domain.name(e)}, {"image", format_path(m.codomain, m.edge_image[static_cast<std::size_t>(e)])}});
  }
  return out;
}

Json gates_json(const Graph& g, const TrainTrackStructure& s) {
  Json out = Json::array();
  for (const auto& gate : s.gates()) {
    Json block = Json::array();
    for (Direction d : gate) block.push_back(g.label(d));
    out.push_back(block);
  }
  return out;
}

Json trace_json(const std::vector<TraceEntry>& trace) {
  Json out = Json::array();
  for (const TraceEntry& t : trace) out.push_back(format_trace_line(t));
  return out;
}

Json marked_json(const MarkedGraph& mg) {
  Json out;
  out["vertices"] = mg.graph.num_vertices();
  out["edges"] = graph_to_json(mg.graph)["edges"];
  Json marking = Json::array();
  for (const EdgePath& p : mg.marking) marking.push_back(format_path(mg.graph, p.edges));
  out["marking"] = marking;
  Json inverse = Json::array();
  for (const Word& w : mg.inverse_marking) inverse.push_back(format_word(w));
  out["inverse_marking"] = inverse;
  out["base"] = mg.base;
  return out;
}

}  // namespace

OuterSpacePoint<Rational> point_from_json(const Json& j) {
  const int num_vertices = require(j, "vertices").get<int>();
  std::vector<Graph::Edge> edges;
  const Json& ej = require(j, "edges");
  if (!ej.is_array()) throw ParseError("\"edges\" must be an array", 0);
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const Json& e = ej[i];
    if (e.contains("id") && e.at("id").get<std::size_t>() != i) throw ParseError("edge ids must be 0, 1, 2, ... in order", i);
    const int from = require(e, "from").get<int>();
    const int to = require(e, "to").get<int>();
    if (from < 0 || to < 0 || from >= num_vertices || to >= num_vertices) throw DomainError("edge endpoint out of range");
    edges.push_back({from, to, e.contains("name") ? e.at("name").get<std::string>() : std::string()});
  }
  Graph g(num_vertices, std::move(edges));

  const Json& lj = require(j, "lengths");
  Metric<Rational>::Vector lengths(g.num_edges());
  if (lj.is_array()) {
    if (static_cast<int>(lj.size()) != g.num_edges()) throw DomainError("one length per edge required");
    for (int e = 0; e < g.num_edges(); ++e) lengths[e] = length_value(lj[static_cast<std::size_t>(e)]);
  } else if (lj.is_object()) {
    for (int e = 0; e < g.num_edges(); ++e) {
      if (!lj.contains(g.name(e))) throw DomainError("missing length for edge " + g.name(e));
      lengths[e] = length_value(lj.at(g.name(e)));
    }
  } else {
    throw ParseError("\"lengths\" must be an array or an object", 0);
  }
  const Rational total = lengths.sum();
  if (total != 1 && std::abs(to_double(total) - 1.0) <= 1e-9) lengths /= total;

  MarkedGraph mg;
  const int base = j.contains("base") ? j.at("base").get<int>() : 0;
  if (j.contains("marking")) {
    mg.graph = g;
    mg.base = base;
    for (const Json& p : j.at("marking")) mg.marking.push_back(EdgePath{free_reduce(parse_path(g, p.get<std::string>())), false});
    if (j.contains("inverse_marking")) {
      for (const Json& w : j.at("inverse_marking")) mg.inverse_marking.push_back(free_reduce(parse_word(w.get<std::string>())));
    } else {
      mg.inverse_marking = compute_inverse_marking(g, base, mg.marking);
    }
  } else {
    mg = spanning_tree_marking(g, base);
  }
  return make_point(std::move(mg), Metric<Rational>(lengths));
}

OuterSpacePoint<Rational> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point file " + path, 0);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), e.byte);
  }
  try {
    return point_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed point file: ") + e.what(), 0);
  }
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    edges.push_back({{"id", e}, {"name", g.name(e)}, {"from", g.edge(e).tail}, {"to", g.edge(e).head}});
  }
  return {{"vertices", g.num_vertices()}, {"edges", edges}};
}

Json edge_set_to_json(const Graph& g, const EdgeSet& s) {
  Json out = Json::array();
  for (int e : s) out.push_back(g.name(e));
  return out;
}

Json point_to_json(const OuterSpacePoint<Rational>& x) {
  Json out = marked_json(x.marked);
  Json lengths = Json::array();
  for (int e = 0; e < x.metric.size(); ++e) lengths.push_back(format_rational(x.metric[e]));
  out["lengths"] = lengths;
  return out;
}

Json point_to_json(const OuterSpacePoint<double>& x) {
  Json out = marked_json(x.marked);
  out["lengths"] = metric_json(x.metric);
  return out;
}

std::string certificate_status(const Certificate& c) {
  return std::visit(Overloaded{
                        [](const TrainTrackCertificate&) { return std::string("train_track"); },
                        [](const ReductionCertificate&) { return std::string("reducible"); },
                        [](const FiniteOrderCertificate&) { return std::string("finite_order"); },
                        [](const NonTerminationCertificate&) { return std::string("max_iters"); },
                    },
                    c);
}

Json traintrack_report(const TrainTrackRun& run) {
  Json out;
  out["status"] = certificate_status(run.certificate);
  std::visit(Overloaded{
                 [&](const TrainTrackCertificate& c) {
                   out["lambda"] = rounded(c.lambda);
                   out["metric"] = metric_json(c.metric);
                   out["gates"] = gates_json(c.rep.graph(), c.structure);
                   out["edge_images"] = edge_images_json(c.rep.map);
                   out["transition_matrix"] = matrix_json(c.matrix);
                   out["point"] = point_to_json(OuterSpacePoint<double>{c.rep.marked, c.metric});
                 },
                 [&](const ReductionCertificate& c) {
                   out["lambda"] = nullptr;
                   out["subgraph"] = edge_set_to_json(c.rep.graph(), c.subset);
                   out["edge_images"] = edge_images_json(c.rep.map);
                   out["transition_matrix"] = matrix_json(c.matrix);
                   out["graph"] = marked_json(c.rep.marked);
                 },
                 [&](const FiniteOrderCertificate& c) {
                   out["lambda"] = 1.0;
                   out["order"] = c.order;
                   out["edge_images"] = edge_images_json(c.rep.map);
                   out["graph"] = marked_json(c.rep.marked);
                 },
                 [&](const NonTerminationCertificate& c) {
                   out["lambda"] = nullptr;
                   out["reason"] = c.reason;
                 },
             },
             run.certificate);
  out["trace"] = trace_json(run.trace);
  Json increases = Json::array();
  for (int r : run.lambda_increases) increases.push_back(r);
  out["lambda_increases"] = increases;
  return out;
}

Json distance_report(const OuterSpacePoint<Rational>& x, const OuterSpacePoint<Rational>& y,
                     const DistanceReport<Rational>& r) {
  Json out;
  out["sigma"] = format_rational(r.sigma);
  out["sigma_value"] = rounded(to_double(r.sigma));
  out["log_sigma"] = rounded(r.log_sigma);
  out["witness"] = format_path(x.graph(), r.witness_loop().loop.edges);
  Json table = Json::array();
  for (const RatioEntry<Rational>& e : r.table) {
    table.push_back({{"loop", format_path(x.graph(), e.candidate.loop.edges)},
                     {"image", format_path(y.graph(), e.image.edges)},
                     {"ratio", format_rational(e.ratio)},
                     {"ratio_value", rounded(to_double(e.ratio))}});
  }
  out["table"] = table;
  return out;
}

Json candidates_report(const Graph& g, const std::vector<CandidateLoop>& loops) {
  Json list = Json::array();
  for (const CandidateLoop& c : loops) list.push_back({{"loop", format_path(g, c.loop.edges)}, {"crossings", c.crossings}});
  return {{"edges", edge_set_to_json(g, all_edges(g))}, {"count", loops.size()}, {"candidates", list}};
}

Json simplex_report(const Graph& g, const SimplexMinReport& r) {
  Json trace = Json::array();
  for (const auto& [lo, hi] : r.trace) trace.push_back({rounded(lo), rounded(hi)});
  return {{"lambda", rounded(r.lambda)},
          {"log_lambda", rounded(std::log(r.lambda))},
          {"floor", r.floor},
          {"boundary_flag", r.boundary_flag},
          {"floor_edges", edge_set_to_json(g, r.floor_edges)},
          {"metric", metric_json(r.metric)},
          {"trace", trace}};
}

Json classify_report(const ClassifyResult& r) {
  Json out;
  out["classification"] = classification_name(r.kind);
  std::visit(Overloaded{
                 [&](const Elliptic& e) { out["order"] = e.order; },
                 [&](const Hyperbolic& h) {
                   out["lambda"] = rounded(h.lambda);
                   out["from_reduction"] = h.from_reduction;
                   out["point"] = point_to_json(h.point);
                   out["minimum"] = simplex_report(h.point.graph(), h.minimum);
                 },
                 [&](const ParabolicSuspect& p) {
                   const auto* red = std::get_if<ReductionCertificate>(&r.run.certificate);
                   const Graph& g = red->rep.graph();
                   out["subgraph"] = edge_set_to_json(g, p.subgraph);
                   Json trend = Json::array();
                   Json floors = Json::array();
                   for (const SimplexMinReport& f : p.floors) {
                     trend.push_back(rounded(f.lambda));
                     floors.push_back(simplex_report(g, f));
                   }
                   out["lambda_trend"] = trend;
                   out["floors"] = floors;
                   out["restricted_lambda"] = p.restricted_lambda ? Json(rounded(*p.restricted_lambda)) : Json(nullptr);
                 },
                 [&](const Inconclusive& i) { out["reason"] = i.reason; },
             },
             r.kind);
  out["certificate"] = traintrack_report(r.run);
  return out;
}

}  // namespace outerspace
