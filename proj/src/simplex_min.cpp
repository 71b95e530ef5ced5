#include <algorithm>
#include <set>

#include "outerspace/errors.hpp"
#include "outerspace/linear_program.hpp"
#include "outerspace/lipschitz.hpp"

namespace outerspace {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr double kLpEps = 1e-13;
constexpr double kFeasibleSlack = 1e-12;
constexpr int kBisectionSteps = 60;

struct Rows {
  Eigen::MatrixXd image;   // A
  Eigen::MatrixXd domain;  // C
};

bool dominated(const std::vector<int>& a_r, const std::vector<int>& c_r, const std::vector<int>& a_s,
               const std::vector<int>& c_s) {
  for (std::size_t e = 0; e < a_r.size(); ++e) {
    if (a_r[e] > a_s[e] || c_r[e] < c_s[e]) return false;
  }
  return true;
}

Rows prune_rows(int num_edges, const std::vector<std::vector<int>>& image_counts,
                const std::vector<std::vector<int>>& domain_counts) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> unique;
  for (std::size_t r = 0; r < image_counts.size(); ++r) {
    const auto& a = image_counts[r];
    const auto& c = domain_counts[r];
    bool at_most_one = true;
    for (int e = 0; e < num_edges; ++e) at_most_one = at_most_one && a[static_cast<std::size_t>(e)] <= c[static_cast<std::size_t>(e)];
    // Ratio <= 1 everywhere; never binding since λ >= 1.
    if (!at_most_one) unique.insert({a, c});
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> list(unique.begin(), unique.end());
  std::vector<std::pair<std::vector<int>, std::vector<int>>> kept;
  for (std::size_t r = 0; r < list.size(); ++r) {
    bool drop = false;
    for (std::size_t s = 0; s < list.size() && !drop; ++s) {
      if (s != r && dominated(list[r].first, list[r].second, list[s].first, list[s].second)) {
        // Mutual domination means equal rows, which the set already merged.
        drop = true;
      }
    }
    if (!drop) kept.push_back(list[r]);
  }
  Rows rows{Matrix(static_cast<Eigen::Index>(kept.size()), num_edges),
            Matrix(static_cast<Eigen::Index>(kept.size()), num_edges)};
  for (std::size_t r = 0; r < kept.size(); ++r) {
    for (int e = 0; e < num_edges; ++e) {
      rows.image(static_cast<Eigen::Index>(r), e) = kept[r].first[static_cast<std::size_t>(e)];
      rows.domain(static_cast<Eigen::Index>(r), e) = kept[r].second[static_cast<std::size_t>(e)];
    }
  }
  return rows;
}

// Rows of (A − λC), scaled so each row of C sums to 1.
Matrix stretch_rows(const Rows& rows, double lambda) {
  Matrix m = rows.image - lambda * rows.domain;
  for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) /= rows.domain.row(r).sum();
  return m;
}

// min t subject to M ℓ ≤ t, ℓ = floor + u, u ≥ 0, Σℓ = 1. Returns (t, ℓ).
std::pair<double, Vector> min_excess(const Matrix& m, double floor) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index edges = m.cols();
  const double free_volume = 1.0 - static_cast<double>(edges) * floor;
  Matrix a = Matrix::Zero(rows + 2, edges + 2);
  Vector b(rows + 2);
  a.topLeftCorner(rows, edges) = m;
  a.block(0, edges, rows, 1).setConstant(-1.0);
  a.block(0, edges + 1, rows, 1).setConstant(1.0);
  b.head(rows) = -floor * m.rowwise().sum();
  a.row(rows).head(edges).setOnes();
  b[rows] = free_volume;
  a.row(rows + 1).head(edges).setConstant(-1.0);
  b[rows + 1] = -free_volume;
  Vector c = Vector::Zero(edges + 2);
  c[edges] = -1.0;
  c[edges + 1] = 1.0;
  const LpResult<double> res = maximize<double>(a, b, c, kLpEps);
  if (res.status != LpStatus::Optimal) throw NumericError("feasibility program did not solve");
  Vector lengths = res.x.head(edges).array() + floor;
  return {-res.value, lengths};
}

// max ℓ_e subject to M ℓ ≤ slack, ℓ ≥ floor, Σℓ = 1.
Vector max_edge(const Matrix& m, double floor, double slack, Eigen::Index edge) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index edges = m.cols();
  const double free_volume = 1.0 - static_cast<double>(edges) * floor;
  Matrix a = Matrix::Zero(rows + 2, edges);
  Vector b(rows + 2);
  a.topRows(rows) = m;
  b.head(rows) = (-floor * m.rowwise().sum()).array() + slack;
  a.row(rows).setOnes();
  b[rows] = free_volume;
  a.row(rows + 1).setConstant(-1.0);
  b[rows + 1] = -free_volume;
  Vector c = Vector::Zero(edges);
  c[edge] = 1.0;
  const LpResult<double> res = maximize<double>(a, b, c, kLpEps);
  if (res.status != LpStatus::Optimal) throw NumericError("edge program did not solve");
  return res.x.array() + floor;
}

double max_ratio(const Rows& rows, const Vector& lengths) {
  double best = 1.0;
  for (Eigen::Index r = 0; r < rows.image.rows(); ++r) {
    best = std::max(best, rows.image.row(r).dot(lengths) / rows.domain.row(r).dot(lengths));
  }
  return best;
}

}  // namespace

SimplexMinReport min_ratio_on_simplex(int num_edges, const std::vector<std::vector<int>>& image_counts,
                                      const std::vector<std::vector<int>>& domain_counts, double floor,
                                      double tol) {
  if (num_edges < 1) throw DomainError("simplex needs at least one edge");
  if (!(floor > 0.0) || floor * num_edges >= 1.0) throw DomainError("floor must lie in (0, 1/|edges|)");
  const Rows rows = prune_rows(num_edges, image_counts, domain_counts);
  SimplexMinReport report;
  report.floor = floor;
  const Vector barycenter = Vector::Constant(num_edges, 1.0 / num_edges);
  if (rows.image.rows() == 0) {
    report.lambda = 1.0;
    report.metric = Metric<double>(barycenter);
    return report;
  }

  double lo = 1.0;
  double hi = max_ratio(rows, barycenter);
  const auto feasible = [&](double lambda) { return min_excess(stretch_rows(rows, lambda), floor).first <= kFeasibleSlack; };
  if (feasible(lo)) {
    hi = lo;
  } else {
    if (!feasible(hi)) throw InternalError("bisection upper bound is infeasible");
    for (int step = 0; step < kBisectionSteps; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
      report.trace.emplace_back(lo, hi);
    }
  }
  report.lambda = hi;

  const Matrix m = stretch_rows(rows, hi);
  const double slack = std::max(0.0, min_excess(m, floor).first) + kFeasibleSlack;
  Vector sum = Vector::Zero(num_edges);
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    const Vector best = max_edge(m, floor, slack, e);
    sum += best;
    if (best[e] - floor <= tol) report.floor_edges.push_back(static_cast<int>(e));
  }
  report.boundary_flag = !report.floor_edges.empty();
  // The average of the per-edge maximizers stays feasible and sits off the
  // floor on every edge that can leave it.
  Vector lengths = sum / static_cast<double>(num_edges);
  lengths = lengths.cwiseMax(floor);
  report.metric = Metric<double>::from_weights(lengths);
  return report;
}

SimplexMinReport min_displacement_on_simplex(const GraphMap& self_map, double floor, double tol) {
  if (!self_map.self_map) throw DomainError("simplex minimization needs a self-map");
  const Graph& g = self_map.domain;
  std::vector<std::vector<int>> image_counts;
  std::vector<std::vector<int>> domain_counts;
  for (const CandidateLoop& c : candidates(g)) {
    const EdgePath image = self_map.image_of(c.loop);
    if (image.empty()) throw InternalError("candidate loop has nullhomotopic image");
    image_counts.push_back(crossing_counts(g, image.edges));
    domain_counts.push_back(c.crossings);
  }
  return min_ratio_on_simplex(g.num_edges(), image_counts, domain_counts, floor, tol);
}

}  // namespace outerspace
