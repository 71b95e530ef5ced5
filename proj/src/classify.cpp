#include "outerspace/classify.hpp"

namespace outerspace {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::optional<double> restricted_pf(const TransitionMatrix& m, const EdgeSet& subset) {
  const TransitionMatrix block = restrict_matrix(m, subset);
  if (!matrix_irreducible(block)) return std::nullopt;
  return pf_eigen(block).lambda;
}

}  // namespace

ClassifyResult classify(const Automorphism& phi, const ClassifyOptions& options) {
  ClassifyResult result{Inconclusive{"no certificate"}, find_train_track(phi, options.max_iters)};
  result.kind = std::visit(
      Overloaded{
          [&](const FiniteOrderCertificate& c) -> Classification { return Elliptic{c.order}; },
          [&](const TrainTrackCertificate& c) -> Classification {
            if (!(c.lambda > 1.0 + options.tol)) return Inconclusive{"train track with growth rate 1"};
            SimplexMinReport min = min_displacement_on_simplex(c.rep.map, options.hyperbolic_floor, options.tol);
            if (min.boundary_flag) return Inconclusive{"train track found but the simplex minimum touches the floor"};
            return Hyperbolic{c.lambda, OuterSpacePoint<double>{c.rep.marked, c.metric}, std::move(min), false};
          },
          [&](const ReductionCertificate& c) -> Classification {
            std::vector<SimplexMinReport> floors;
            bool all_boundary = true;
            bool none_boundary = true;
            for (double floor : options.floors) {
              if (floor * c.rep.graph().num_edges() >= 1.0) continue;
              floors.push_back(min_displacement_on_simplex(c.rep.map, floor, options.tol));
              all_boundary = all_boundary && floors.back().boundary_flag;
              none_boundary = none_boundary && !floors.back().boundary_flag;
            }
            if (floors.empty()) return Inconclusive{"no usable floor"};
            if (all_boundary) return ParabolicSuspect{c.subset, std::move(floors), restricted_pf(c.matrix, c.subset)};
            const SimplexMinReport& last = floors.back();
            if (none_boundary && last.lambda > 1.0 + options.tol) {
              return Hyperbolic{last.lambda, OuterSpacePoint<double>{c.rep.marked, last.metric}, last, true};
            }
            return Inconclusive{"reduction found but simplex minima are mixed"};
          },
          [&](const NonTerminationCertificate& c) -> Classification { return Inconclusive{c.reason}; },
      },
      result.run.certificate);
  return result;
}

std::string classification_name(const Classification& c) {
  return std::visit(Overloaded{
                        [](const Elliptic&) { return std::string("elliptic"); },
                        [](const Hyperbolic&) { return std::string("hyperbolic"); },
                        [](const ParabolicSuspect&) { return std::string("parabolic_suspect"); },
                        [](const Inconclusive&) { return std::string("inconclusive"); },
                    },
                    c);
}

}  // namespace outerspace
