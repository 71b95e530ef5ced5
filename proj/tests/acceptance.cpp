// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "outerspace/classify.hpp"
#include "outerspace/io.hpp"
#include "support.hpp"

using namespace outerspace;
using testing::aut;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  Outcome() { detail.precision(12); }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<std::vector<std::string>> gate_labels(const Graph& g, const TrainTrackStructure& s) {
  std::vector<std::vector<std::string>> out;
  for (const auto& gate : s.gates()) {
    std::vector<std::string> labels;
    for (Direction d : gate) labels.push_back(g.label(d));
    out.push_back(labels);
  }
  return out;
}

const double kPf = 2.618033988749895;

void golden_train_track(Outcome& o) {
  const auto start = Clock::now();
  const TrainTrackRun run = find_train_track(aut(testing::kGoldenMap));
  const double elapsed = seconds_since(start);
  const auto* c = std::get_if<TrainTrackCertificate>(&run.certificate);
  o.require(c != nullptr, "train track certificate");
  if (c == nullptr) return;
  o.require(std::abs(c->lambda - kPf) <= 1e-9, "lambda");
  o.require(std::abs(c->metric[0] - 0.381966011250105) <= 1e-9 && std::abs(c->metric[1] - 0.618033988749895) <= 1e-9,
            "metric");
  using L = std::vector<std::vector<std::string>>;
  o.require(gate_labels(c->rep.graph(), c->structure) == L{{"a"}, {"A", "B"}, {"b"}}, "gates");
  o.require(elapsed < 1.0, "time");
  o.detail << "lambda=" << c->lambda << " metric=(" << c->metric[0] << ", " << c->metric[1] << ") t=" << elapsed << "s";
}

void rotation_finite_order(Outcome& o) {
  const auto start = Clock::now();
  const TrainTrackRun run = find_train_track(aut(testing::kRotation));
  const double elapsed = seconds_since(start);
  const auto* c = std::get_if<FiniteOrderCertificate>(&run.certificate);
  o.require(c != nullptr && c->order == 6, "finite order 6");
  o.require(elapsed < 1.0, "time");
  o.detail << "status=" << certificate_status(run.certificate) << " order=" << (c ? c->order : 0) << " t=" << elapsed << "s";
}

void reductions(Outcome& o) {
  const TrainTrackRun r3 = find_train_track(aut(testing::kShear));
  const auto* c3 = std::get_if<ReductionCertificate>(&r3.certificate);
  o.require(c3 != nullptr && c3->subset == EdgeSet{0}, "shear reducible {a}");
  const TrainTrackRun r4 = find_train_track(aut(testing::kRank4));
  const auto* c4 = std::get_if<ReductionCertificate>(&r4.certificate);
  o.require(c4 != nullptr && c4->subset == EdgeSet{0, 1}, "rank-4 reducible {a,b}");
  if (c4 != nullptr) {
    TransitionMatrix block(2, 2);
    block << 1, 1, 1, 2;
    EdgeSet rest;
    for (int e = 0; e < c4->rep.graph().num_edges(); ++e) {
      if (!contains(c4->subset, e)) rest.push_back(e);
    }
    o.require(restrict_matrix(c4->matrix, c4->subset) == block, "invariant block");
    o.require(restrict_matrix(c4->matrix, rest) == block, "quotient block");
  }
  if (c3 != nullptr && c4 != nullptr) {
    const Json sub3 = edge_set_to_json(c3->rep.graph(), c3->subset);
    const Json sub4 = edge_set_to_json(c4->rep.graph(), c4->subset);
    o.detail << "shear " << sub3.dump() << " rank-4 " << sub4.dump();
  }
}

void rank4_minimization(Outcome& o) {
  const auto start = Clock::now();
  const Representative rep = rose_representative(aut(testing::kRank4));
  double prev = 1e300;
  for (double floor : {1e-2, 1e-3, 1e-4}) {
    const SimplexMinReport r = min_displacement_on_simplex(rep.map, floor);
    o.require(r.lambda < prev, "strictly decreasing");
    o.require(r.lambda >= kPf - 1e-9, "above the PF value");
    o.require(r.boundary_flag, "boundary flag");
    o.detail << "lambda(" << floor << ")=" << r.lambda << " ";
    prev = r.lambda;
  }
  o.require(prev - kPf <= 0.05, "within 0.05 at 1e-4");
  const double elapsed = seconds_since(start);
  o.require(elapsed < 10.0, "time");
  o.detail << "t=" << elapsed << "s";
}

void golden_interior_minimum(Outcome& o) {
  const SimplexMinReport r = min_displacement_on_simplex(rose_representative(aut(testing::kGoldenMap)).map, 1e-6);
  o.require(std::abs(r.lambda - kPf) <= 1e-6, "lambda");
  o.require(!r.boundary_flag, "boundary flag");
  o.detail << "lambda=" << r.lambda << " boundary=" << r.boundary_flag;
}

void candidates_vs_brute_force(Outcome& o) {
  const auto start = Clock::now();
  std::mt19937 rng(2024);
  const auto graphs = testing::core_graphs(4);
  int pairs = 0;
  for (const Graph& g : graphs) {
    // Immersed loops enter the stretch ratio only through crossing counts.
    const auto vectors = testing::immersed_count_vectors(g, 12);
    for (int k = 0; k < 50; ++k) {
      const auto x = make_point(spanning_tree_marking(g), testing::random_rational_metric(g.num_edges(), rng));
      const auto y = make_point(spanning_tree_marking(g), testing::random_rational_metric(g.num_edges(), rng));
      Rational best(0);
      for (const auto& c : vectors) {
        const Rational r = y.metric.dot(c) / x.metric.dot(c);
        if (r > best) best = r;
      }
      const Rational s = sigma(x, y).sigma;
      if (s != best) {
        o.require(false, "graph with " + std::to_string(g.num_edges()) + " edges");
        return;
      }
      ++pairs;
    }
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 60.0, "time");
  o.detail << graphs.size() << " graphs, " << pairs << " pairs exact, t=" << elapsed << "s";
}

void metric_axioms(Outcome& o) {
  std::mt19937 rng(7);
  std::vector<Graph> graphs;
  for (const Graph& g : testing::core_graphs(4)) {
    const int b = betti_number(g);
    if (b >= 2 && b <= 3 && g.num_edges() <= 3 * b - 3) graphs.push_back(g);
  }
  const auto random_point = [&](int rank) {
    std::vector<const Graph*> pool;
    for (const Graph& g : graphs) {
      if (betti_number(g) == rank) pool.push_back(&g);
    }
    const Graph& g = *pool[rng() % pool.size()];
    return act(make_point(spanning_tree_marking(g), testing::random_rational_metric(g.num_edges(), rng)),
               testing::random_automorphism(rank, 4, rng));
  };
  double worst_triangle = -1e300;
  double worst_isometry = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int rank = 2 + k % 2;
    const auto x = random_point(rank);
    const auto y = random_point(rank);
    const auto z = random_point(rank);
    worst_triangle = std::max(worst_triangle, distance(x, z) - distance(x, y) - distance(y, z));
  }
  for (int k = 0; k < 100; ++k) {
    const int rank = 2 + k % 2;
    const auto x = random_point(rank);
    const auto y = random_point(rank);
    const Automorphism phi = testing::random_automorphism(rank, 6, rng);
    worst_isometry = std::max(worst_isometry, std::abs(distance(act(x, phi), act(y, phi)) - distance(x, y)));
  }
  o.require(worst_triangle <= 1e-9, "triangle inequality");
  o.require(worst_isometry <= 1e-9, "isometric action");
  const auto p = testing::rose_point({"1/4", "3/4"});
  const auto q = testing::rose_point({"1/2", "1/2"});
  o.require(sigma(p, q).sigma == Rational(2) && sigma(q, p).sigma == Rational(3, 2), "asymmetry example");
  o.require(distance(p, q) == std::log(2.0) && distance(q, p) == std::log(1.5), "asymmetry logs");
  o.detail << "max triangle excess=" << worst_triangle << " max isometry defect=" << worst_isometry
           << " d(x,y)=" << distance(p, q) << " d(y,x)=" << distance(q, p);
}

// Three distinct legal candidates and their iterated images.
void check_scaling(Outcome& o, const char* label, const GraphMap& m, const Metric<double>& metric,
                   const TrainTrackStructure& s, double lambda) {
  int used = 0;
  double worst = 0.0;
  for (const CandidateLoop& c : candidates(m.domain)) {
    if (!is_legal(c.loop, s)) continue;
    EdgePath img = c.loop;
    double lk = 1.0;
    const double base = metric.length(c.loop.edges);
    for (int k = 1; k <= 5; ++k) {
      img = m.image_of(img);
      lk *= lambda;
      worst = std::max(worst, std::abs(metric.length(img.edges) - lk * base) / lk);
    }
    if (++used == 3) break;
  }
  o.require(used == 3, std::string(label) + " has three legal loops");
  o.require(worst <= 1e-6, std::string(label) + " scaling");
  o.detail << label << " worst=" << worst << " ";
}

void legal_loop_scaling(Outcome& o) {
  const TrainTrackRun run = find_train_track(aut(testing::kGoldenMap));
  const auto* c = std::get_if<TrainTrackCertificate>(&run.certificate);
  o.require(c != nullptr, "criterion 1 certificate");
  if (c != nullptr) check_scaling(o, "train-track", c->rep.map, c->metric, c->structure, c->lambda);
  const Representative rose = rose_representative(aut(testing::kGoldenMap));
  const SimplexMinReport r = min_displacement_on_simplex(rose.map, 1e-6);
  const auto s = is_train_track(rose.map);
  o.require(s.has_value(), "criterion 5 train track structure");
  if (s) check_scaling(o, "simplex-min", rose.map, r.metric, *s, r.lambda);
}

void deterministic_json(Outcome& o) {
  for (const char* text : {testing::kGoldenMap, testing::kRotation, testing::kShear, testing::kRank4}) {
    const std::string first = traintrack_report(find_train_track(aut(text))).dump(2);
    for (int k = 0; k < 3; ++k) {
      o.require(traintrack_report(find_train_track(aut(text))).dump(2) == first, text);
    }
  }
  o.detail << "4 maps x 4 runs identical";
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"golden train track, PF metric and gates", golden_train_track},
      {"rotation finite order 6", rotation_finite_order},
      {"shear and rank-4 reductions", reductions},
      {"rank-4 simplex minimum escapes toward the boundary", rank4_minimization},
      {"golden simplex minimum is interior", golden_interior_minimum},
      {"candidate stretch equals brute force over loops of length <= 12", candidates_vs_brute_force},
      {"triangle inequality, isometric action, asymmetry", metric_axioms},
      {"legal loops scale by lambda^k", legal_loop_scaling},
      {"byte-identical JSON across runs", deterministic_json},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    ++index;
    std::printf("%s criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.str().c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
