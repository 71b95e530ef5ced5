#include "outerspace/transition.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "outerspace/errors.hpp"

namespace outerspace {

TransitionMatrix transition_matrix(const GraphMap& m) {
  const int n = m.domain.num_edges();
  TransitionMatrix out = TransitionMatrix::Zero(m.codomain.num_edges(), n);
  for (int j = 0; j < n; ++j) {
    for (OrientedEdge o : m.edge_image[static_cast<std::size_t>(j)]) out(o.edge(), j) += 1;
  }
  return out;
}

namespace {

std::vector<char> forward_closure(const TransitionMatrix& m, int start) {
  std::vector<char> seen(static_cast<std::size_t>(m.cols()), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    const int j = stack.back();
    stack.pop_back();
    for (int i = 0; i < m.rows(); ++i) {
      if (m(i, j) > 0 && seen[static_cast<std::size_t>(i)] == 0) {
        seen[static_cast<std::size_t>(i)] = 1;
        stack.push_back(i);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<EdgeSet> closed_classes(const TransitionMatrix& m) {
  std::vector<EdgeSet> out;
  for (int e = 0; e < m.cols(); ++e) {
    const auto seen = forward_closure(m, e);
    EdgeSet s;
    for (int i = 0; i < m.cols(); ++i) {
      if (seen[static_cast<std::size_t>(i)] != 0) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool matrix_irreducible(const TransitionMatrix& m) {
  for (const EdgeSet& s : closed_classes(m)) {
    if (static_cast<int>(s.size()) != m.cols()) return false;
  }
  return true;
}

std::optional<EdgeSet> closed_class(const TransitionMatrix& m) {
  for (const EdgeSet& s : closed_classes(m)) {
    if (static_cast<int>(s.size()) < m.cols()) return s;
  }
  return std::nullopt;
}

std::optional<EdgeSet> closed_class(const TransitionMatrix& m, const Graph& g) {
  std::optional<EdgeSet> forest;
  for (const EdgeSet& s : closed_classes(m)) {
    if (static_cast<int>(s.size()) == m.cols()) continue;
    if (!is_forest(g, s)) return s;
    if (!forest) forest = s;
  }
  return forest;
}

TransitionMatrix restrict_matrix(const TransitionMatrix& m, const EdgeSet& subset) {
  const auto k = static_cast<Eigen::Index>(subset.size());
  TransitionMatrix out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      out(i, j) = m(subset[static_cast<std::size_t>(i)], subset[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

namespace {

constexpr double kPfTolerance = 1e-12;
constexpr int kPfMaxIterations = 100000;

std::optional<PfEigen> power_iteration(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= kPfMaxIterations; ++it) {
    Eigen::RowVectorXd next = v * m;
    const double total = next.sum();
    if (!(total > 0.0)) return std::nullopt;
    next /= total;
    const double change = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (change <= kPfTolerance * v.cwiseAbs().maxCoeff()) {
      PfEigen out;
      out.lambda = (v * m).sum();
      out.left = v.transpose();
      out.iterations = it;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

PfEigen pf_eigen(const TransitionMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("transition matrix must be square and nonempty");
  const Eigen::MatrixXd md = m.cast<double>();
  if (auto r = power_iteration(md)) {
    if (r->left.minCoeff() > 0.0) return *r;
  }
  // Periodic matrices oscillate; M + I has the same eigenvector and is
  // primitive when M is irreducible.
  const Eigen::MatrixXd shifted = md + Eigen::MatrixXd::Identity(m.rows(), m.cols());
  if (auto r = power_iteration(shifted)) {
    if (r->left.minCoeff() > 0.0) {
      r->lambda -= 1.0;
      return *r;
    }
  }
  throw NumericError("Perron-Frobenius iteration did not converge to a positive eigenvector");
}

double spectral_radius(const TransitionMatrix& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(m.cast<double>(), false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace outerspace
