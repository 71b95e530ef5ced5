#include <doctest.h>

#include "outerspace/errors.hpp"
#include "outerspace/train_track.hpp"
#include "support.hpp"

using namespace outerspace;
using testing::aut;

namespace {

GraphMap rose_map(const char* text) { return rose_representative(aut(text)).map; }

TransitionMatrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
  TransitionMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool certificate_represents(const TrainTrackRun& run, const Automorphism& phi) {
  const Automorphism inv = phi.inverse();
  if (const auto* c = std::get_if<TrainTrackCertificate>(&run.certificate)) return represents(c->rep.map, c->rep.marked, inv);
  if (const auto* c = std::get_if<ReductionCertificate>(&run.certificate)) return represents(c->rep.map, c->rep.marked, inv);
  if (const auto* c = std::get_if<FiniteOrderCertificate>(&run.certificate)) return represents(c->rep.map, c->rep.marked, inv);
  return true;
}

bool has_low_valence(const Graph& g) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) <= 2) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("transition matrices") {
  CHECK(transition_matrix(rose_map(testing::kGoldenMap)) == matrix({{1, 1}, {1, 2}}));
  CHECK(transition_matrix(rose_map("a->a; b->b")) == TransitionMatrix::Identity(2, 2));
  CHECK(transition_matrix(rose_map(testing::kRank4)) ==
        matrix({{1, 1, 1, 1}, {1, 2, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 2}}));
}

TEST_CASE("irreducibility and closed classes") {
  const TransitionMatrix golden = transition_matrix(rose_map(testing::kGoldenMap));
  CHECK(matrix_irreducible(golden));
  CHECK_FALSE(closed_class(golden).has_value());
  const TransitionMatrix shear = transition_matrix(rose_map(testing::kShear));
  CHECK_FALSE(matrix_irreducible(shear));
  CHECK(closed_class(shear) == EdgeSet{0});
  const TransitionMatrix r4 = transition_matrix(rose_map(testing::kRank4));
  CHECK(closed_class(r4) == EdgeSet{0, 1});
  CHECK(restrict_matrix(r4, EdgeSet{0, 1}) == matrix({{1, 1}, {1, 2}}));
  CHECK(restrict_matrix(r4, EdgeSet{2, 3}) == matrix({{1, 1}, {1, 2}}));
}

TEST_CASE("pf_eigen") {
  const PfEigen golden = pf_eigen(matrix({{1, 1}, {1, 2}}));
  CHECK(golden.lambda == doctest::Approx(testing::kGoldenSquared).epsilon(1e-12));
  CHECK(golden.left[0] == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-10));
  CHECK(golden.left.sum() == doctest::Approx(1.0).epsilon(1e-14));

  const PfEigen perm = pf_eigen(transition_matrix(rose_map(testing::kRotation)));
  CHECK(perm.lambda == doctest::Approx(1.0).epsilon(1e-12));
  for (int e = 0; e < 3; ++e) CHECK(perm.left[e] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  const PfEigen one = pf_eigen(matrix({{2}}));
  CHECK(one.lambda == doctest::Approx(2.0));
  CHECK(one.left[0] == doctest::Approx(1.0));
}

TEST_CASE("pf_eigen property: left eigenvector residual") {
  std::mt19937 rng(51);
  std::uniform_int_distribution<int> entry(0, 3);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    TransitionMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = entry(rng);
    }
    if (!matrix_irreducible(m)) continue;
    const PfEigen pf = pf_eigen(m);
    const Eigen::VectorXd residual = m.cast<double>().transpose() * pf.left - pf.lambda * pf.left;
    CHECK(residual.norm() <= 1e-9 * pf.lambda);
    CHECK(pf.lambda == doctest::Approx(spectral_radius(m)).epsilon(1e-9));
    CHECK(pf.left.minCoeff() > 0.0);
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("is_train_track") {
  const auto golden = is_train_track(rose_map(testing::kGoldenMap));
  REQUIRE(golden.has_value());
  CHECK(golden->gates().size() == 3);
  CHECK(is_train_track(rose_map(testing::kRotation)).has_value());
  CHECK_FALSE(is_train_track(rose_map("a->aabA; b->ababA")).has_value());
}

TEST_CASE("fold") {
  // Not an automorphism: folding a onto b kills a loop.
  const Representative bad = rose_representative(Automorphism(2, {{generator(0)}, {generator(0)}}));
  CHECK_THROWS_AS(fold(bad, Turn(OrientedEdge(0, false), OrientedEdge(1, false))), RankCollapseError);

  const Automorphism shear = aut(testing::kShear);
  const Representative r3 = rose_representative(shear);
  const Representative folded = fold(r3, Turn(OrientedEdge(0, false), OrientedEdge(1, false)));
  CHECK(represents(folded.map, folded.marked, shear.inverse()));
  CHECK(folded.graph().is_core());
  CHECK(betti_number(folded.graph()) == 2);
  CHECK_THROWS_AS(fold(r3, Turn(OrientedEdge(0, false), OrientedEdge(0, false))), DomainError);

  // Images of A and B share the prefix BA, so all of A folds into B.
  const Automorphism golden = aut(testing::kGoldenMap);
  const Representative f2 = fold(rose_representative(golden), Turn(OrientedEdge(0, true), OrientedEdge(1, true)));
  CHECK(represents(f2.map, f2.marked, golden.inverse()));
  CHECK(f2.graph().is_core());
  CHECK(betti_number(f2.graph()) == 2);
}

TEST_CASE("normalize") {
  const Automorphism shear = aut(testing::kShear);
  const Representative folded = fold(rose_representative(shear), Turn(OrientedEdge(0, false), OrientedEdge(1, false)));
  const Representative n = normalize(folded);
  CHECK(represents(n.map, n.marked, shear.inverse()));
  CHECK_FALSE(has_low_valence(n.graph()));
  for (const auto& img : n.map.edge_image) CHECK_FALSE(img.empty());
  // Already normal: unchanged.
  const Representative r2 = rose_representative(aut(testing::kGoldenMap));
  CHECK(normalize(r2).map.edge_image == r2.map.edge_image);
}

TEST_CASE("fold and normalize property: represent the same class") {
  std::mt19937 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const Automorphism phi = testing::random_automorphism(2 + trial % 3, 6, rng);
    const Automorphism inv = phi.inverse();
    Representative r = rose_representative(phi);
    for (int step = 0; step < 4; ++step) {
      const auto s = gates_one_step(r.map, all_edges(r.graph()));
      const auto turn = turn_to_fold(r.map, s);
      if (!turn || turn->degenerate()) break;
      try {
        r = normalize(fold(r, *turn));
      } catch (const RankCollapseError&) {
        FAIL("automorphism folded to a rank collapse");
      }
      CHECK(represents(r.map, r.marked, inv));
      CHECK_FALSE(has_low_valence(r.graph()));
    }
  }
}

TEST_CASE("find_train_track on the standard examples") {
  const Automorphism golden = aut(testing::kGoldenMap);
  const TrainTrackRun r2 = find_train_track(golden);
  const auto* tt = std::get_if<TrainTrackCertificate>(&r2.certificate);
  REQUIRE(tt != nullptr);
  CHECK(tt->lambda == doctest::Approx(testing::kGoldenSquared).epsilon(1e-12));
  CHECK(certificate_represents(r2, golden));
  REQUIRE_FALSE(r2.trace.empty());
  CHECK(format_trace_line(r2.trace.back()).find("2.61803398875") != std::string::npos);

  const TrainTrackRun r1 = find_train_track(aut(testing::kRotation));
  REQUIRE(std::holds_alternative<FiniteOrderCertificate>(r1.certificate));
  CHECK(std::get<FiniteOrderCertificate>(r1.certificate).order == 6);

  const TrainTrackRun r3 = find_train_track(aut(testing::kShear));
  REQUIRE(std::holds_alternative<ReductionCertificate>(r3.certificate));
  CHECK(std::get<ReductionCertificate>(r3.certificate).subset == EdgeSet{0});

  const TrainTrackRun r4 = find_train_track(aut(testing::kRank4));
  REQUIRE(std::holds_alternative<ReductionCertificate>(r4.certificate));
  CHECK(std::get<ReductionCertificate>(r4.certificate).subset == EdgeSet{0, 1});

  const TrainTrackRun conj = find_train_track(aut("a->aabA; b->ababA"));
  REQUIRE(std::holds_alternative<TrainTrackCertificate>(conj.certificate));
  CHECK(std::get<TrainTrackCertificate>(conj.certificate).lambda == doctest::Approx(testing::kGoldenSquared).epsilon(1e-9));

  const TrainTrackRun order6 = find_train_track(aut("a->Ba; b->a"));
  REQUIRE(std::holds_alternative<FiniteOrderCertificate>(order6.certificate));
  CHECK(std::get<FiniteOrderCertificate>(order6.certificate).order == 6);

  const TrainTrackRun capped = find_train_track(aut("a->aabA; b->ababA"), 1);
  CHECK(std::holds_alternative<NonTerminationCertificate>(capped.certificate));
}

TEST_CASE("find_train_track property: certificates on random automorphisms") {
  std::mt19937 rng(53);
  int train_tracks = 0;
  for (int trial = 0; trial < 90; ++trial) {
    const int rank = 2 + trial % 3;
    const Automorphism phi = testing::random_automorphism(rank, 4 + 2 * rank, rng);
    const TrainTrackRun run = find_train_track(phi, 5000);
    CHECK_FALSE(std::holds_alternative<NonTerminationCertificate>(run.certificate));
    CHECK(certificate_represents(run, phi));
    CHECK(run.lambda_increases.empty());
    if (const auto* c = std::get_if<TrainTrackCertificate>(&run.certificate)) {
      ++train_tracks;
      // PF length: every edge is stretched by exactly λ.
      const auto s = slopes(c->rep.map, c->metric, c->metric);
      for (double v : s.slope) CHECK(v == doctest::Approx(c->lambda).epsilon(1e-9));
      // The displacement at the train track point is log λ.
      const OuterSpacePoint<double> x{c->rep.marked, c->metric};
      CHECK(displacement(x, phi).log_sigma == doctest::Approx(std::log(c->lambda)).epsilon(1e-8));
    } else if (const auto* c = std::get_if<ReductionCertificate>(&run.certificate)) {
      // Invariant: images of subset edges stay inside the subset.
      for (int e : c->subset) {
        for (OrientedEdge o : c->rep.map.edge_image[static_cast<std::size_t>(e)]) CHECK(contains(c->subset, o.edge()));
      }
      CHECK(c->subset.size() < static_cast<std::size_t>(c->rep.graph().num_edges()));
    } else if (const auto* c = std::get_if<FiniteOrderCertificate>(&run.certificate)) {
      CHECK(is_inner(power(phi, c->order)));
    }
  }
  CHECK(train_tracks > 20);
}

TEST_CASE("finite_order_check") {
  CHECK(finite_order_check(rose_map(testing::kRotation)) == 6);
  CHECK(finite_order_check(rose_map("a->a; b->b")) == 1);
  CHECK(finite_order_check(rose_map("a->b; b->a")) == 2);
  CHECK_FALSE(finite_order_check(rose_map(testing::kGoldenMap)).has_value());
}

TEST_CASE("outer_order") {
  CHECK(outer_order(aut(testing::kRotation)) == 6);
  CHECK(outer_order(aut("a->Ba; b->a")) == 6);
  CHECK_FALSE(outer_order(aut(testing::kGoldenMap)).has_value());
  // Inner automorphisms have order 1 in Out.
  CHECK(outer_order(aut("a->baB; b->b")).value_or(0) == 1);
}

TEST_CASE("thin_chain_reduction") {
  const auto rose_at = [](std::vector<double> weights) {
    Metric<double>::Vector v(static_cast<Eigen::Index>(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) v[static_cast<Eigen::Index>(i)] = weights[i];
    return make_point(rose_marked_graph(static_cast<int>(weights.size())), Metric<double>::from_weights(v));
  };
  CHECK(thin_chain_reduction(rose_at({1e-3, 1.0 - 1e-3}), aut(testing::kShear), 1.0) == EdgeSet{0});
  const double g = testing::kGolden;
  CHECK_FALSE(thin_chain_reduction(rose_at({1.0, g}), aut(testing::kGoldenMap), 1.0).has_value());
  const double t = 1e-3;
  CHECK(thin_chain_reduction(rose_at({t, t * g, 1.0, g}), aut(testing::kRank4), 1.0) == EdgeSet{0, 1});
  CHECK_THROWS_AS(thin_chain_reduction(rose_at({1.0, g}), aut(testing::kGoldenMap), -0.5), DomainError);
}
