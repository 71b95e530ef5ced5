#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "outerspace/errors.hpp"
#include "outerspace/graph.hpp"
#include "outerspace/scalar.hpp"

namespace outerspace {

/// Positive edge lengths of total volume 1.
template <class Scalar>
class Metric {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Metric() = default;

  /// Throws DomainError unless all lengths are positive and sum to 1
  /// (exactly for rationals, within kVolumeTolerance otherwise).
  explicit Metric(Vector lengths) : lengths_(std::move(lengths)) {
    for (Eigen::Index i = 0; i < lengths_.size(); ++i) {
      if (!(lengths_[i] > Scalar(0))) throw DomainError("edge lengths must be positive");
    }
    const Scalar total = lengths_.sum();
    if constexpr (ScalarTraits<Scalar>::exact) {
      if (total != Scalar(1)) throw DomainError("edge lengths must sum to 1");
    } else {
      if (std::abs(total - 1.0) > kVolumeTolerance) throw DomainError("edge lengths must sum to 1");
    }
  }

  static Metric uniform(int num_edges) {
    return Metric(Vector::Constant(num_edges, Scalar(1) / Scalar(num_edges)));
  }

  /// Scales positive weights to unit volume.
  static Metric from_weights(const Vector& weights) {
    const Scalar total = weights.sum();
    return Metric(Vector(weights / total));
  }

  const Vector& lengths() const { return lengths_; }
  const Scalar& operator[](int e) const { return lengths_[e]; }
  int size() const { return static_cast<int>(lengths_.size()); }

  /// Length of a path with multiplicity (no tightening).
  Scalar length(std::span<const OrientedEdge> path) const {
    Scalar total(0);
    for (OrientedEdge o : path) total += lengths_[o.edge()];
    return total;
  }

  Scalar dot(std::span<const int> counts) const {
    Scalar total(0);
    for (std::size_t e = 0; e < counts.size(); ++e) {
      if (counts[e] != 0) total += Scalar(counts[e]) * lengths_[static_cast<Eigen::Index>(e)];
    }
    return total;
  }

  template <class Other>
  Metric<Other> cast() const {
    typename Metric<Other>::Vector out(lengths_.size());
    for (Eigen::Index i = 0; i < lengths_.size(); ++i) {
      if constexpr (std::is_same_v<Other, double>) {
        out[i] = to_double(lengths_[i]);
      } else {
        out[i] = Other(lengths_[i]);
      }
    }
    if constexpr (std::is_same_v<Other, double>) return Metric<Other>::from_weights(out);
    return Metric<Other>(out);
  }

 private:
  Vector lengths_;
};

}  // namespace outerspace
