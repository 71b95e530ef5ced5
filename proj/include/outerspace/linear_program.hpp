#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace outerspace {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar value{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
};

/// Dense two-phase tableau simplex for: maximize cᵀx s.t. Ax ≤ b, x ≥ 0.
/// Bland-style tie breaking on variable index, so it terminates; with an
/// exact scalar pass eps = 0.
template <class Scalar>
class LinearProgram {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  LinearProgram(const Matrix& a, const Vector& b, const Vector& c, Scalar eps)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        eps_(eps),
        basic_(static_cast<std::size_t>(m_)),
        nonbasic_(static_cast<std::size_t>(n_ + 1)),
        d_(Matrix::Zero(m_ + 2, n_ + 2)) {
    d_.topLeftCorner(m_, n_) = a;
    for (int i = 0; i < m_; ++i) {
      basic_[static_cast<std::size_t>(i)] = n_ + i;
      d_(i, n_) = Scalar(-1);
      d_(i, n_ + 1) = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[static_cast<std::size_t>(j)] = j;
      d_(m_, j) = -c[j];
    }
    nonbasic_[static_cast<std::size_t>(n_)] = -1;
    d_(m_ + 1, n_) = Scalar(1);
  }

  LpResult<Scalar> solve() {
    LpResult<Scalar> out;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && d_(r, n_ + 1) < -eps_) {
      pivot(r, n_);
      if (!run(2) || d_(m_ + 1, n_ + 1) < -eps_) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[static_cast<std::size_t>(i)] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j) {
          if (better(d_(i, j), nonbasic_[static_cast<std::size_t>(j)], d_(i, s), nonbasic_[static_cast<std::size_t>(s)])) s = j;
        }
        pivot(i, s);
      }
    }
    const bool bounded = run(1);
    out.x = Vector::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      const int v = basic_[static_cast<std::size_t>(i)];
      if (v >= 0 && v < n_) out.x[v] = d_(i, n_ + 1);
    }
    out.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
    out.value = d_(m_, n_ + 1);
    return out;
  }

 private:
  static bool better(const Scalar& a, int ia, const Scalar& b, int ib) {
    return a < b || (a == b && ia < ib);
  }

  void pivot(int r, int s) {
    const Scalar inv = Scalar(1) / d_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || abs_(d_(i, s)) <= eps_) continue;
      const Scalar factor = d_(i, s) * inv;
      for (int j = 0; j < n_ + 2; ++j) d_(i, j) -= d_(r, j) * factor;
      d_(i, s) = d_(r, s) * factor;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) d_(r, j) *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) d_(i, s) *= -inv;
    }
    d_(r, s) = inv;
    std::swap(basic_[static_cast<std::size_t>(r)], nonbasic_[static_cast<std::size_t>(s)]);
  }

  bool run(int phase) {
    const int x = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[static_cast<std::size_t>(j)] == -phase) continue;
        if (s == -1 || better(d_(x, j), nonbasic_[static_cast<std::size_t>(j)], d_(x, s), nonbasic_[static_cast<std::size_t>(s)])) s = j;
      }
      if (d_(x, s) >= -eps_) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_(i, s) <= eps_) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const Scalar lhs = d_(i, n_ + 1) / d_(i, s);
        const Scalar rhs = d_(r, n_ + 1) / d_(r, s);
        if (better(lhs, basic_[static_cast<std::size_t>(i)], rhs, basic_[static_cast<std::size_t>(r)])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  static Scalar abs_(const Scalar& v) { return v < Scalar(0) ? Scalar(-v) : v; }

  int m_;
  int n_;
  Scalar eps_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  Matrix d_;
};

template <class Scalar>
LpResult<Scalar> maximize(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c, Scalar eps) {
  return LinearProgram<Scalar>(a, b, c, eps).solve();
}

}  // namespace outerspace
