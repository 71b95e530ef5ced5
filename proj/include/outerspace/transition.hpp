#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "outerspace/graph_map.hpp"

namespace outerspace {

/// entry(i, j) = number of times the image of e_j crosses e_i.
using TransitionMatrix = Eigen::MatrixXi;

TransitionMatrix transition_matrix(const GraphMap& m);

/// The crossing digraph (j → i when entry(i, j) > 0) is strongly connected.
bool matrix_irreducible(const TransitionMatrix& m);

/// Forward closure of each edge, deduplicated and sorted. Each is a set of
/// edges whose images cross only edges of the set.
std::vector<EdgeSet> closed_classes(const TransitionMatrix& m);

/// Lexicographically least proper closed class, or nothing if irreducible.
std::optional<EdgeSet> closed_class(const TransitionMatrix& m);

/// Same, preferring a class that is not a forest in g.
std::optional<EdgeSet> closed_class(const TransitionMatrix& m, const Graph& g);

/// Rows and columns of m indexed by the subset.
TransitionMatrix restrict_matrix(const TransitionMatrix& m, const EdgeSet& subset);

struct PfEigen {
  double lambda = 0.0;
  Eigen::VectorXd left;  // positive, sums to 1
  int iterations = 0;
};

/// Perron–Frobenius eigenvalue and left eigenvector by power iteration
/// (relative tolerance 1e-12, at most 1e5 steps). A periodic matrix is
/// retried through M + I. Throws NumericError on failure.
PfEigen pf_eigen(const TransitionMatrix& m);

/// Largest modulus of an eigenvalue, for any square matrix.
double spectral_radius(const TransitionMatrix& m);

}  // namespace outerspace
