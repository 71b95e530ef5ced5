#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

namespace outerspace {

/// Exact rational scalar. Expression templates are off so the type composes
/// with Eigen reductions and generic code without surprises.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Relative tolerance for floating comparisons (tension membership, boundary
/// detection, metric-axiom checks).
inline constexpr double kTolerance = 1e-9;

/// Allowed drift of a floating metric's total volume from 1.
inline constexpr double kVolumeTolerance = 1e-12;

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
};

template <class Scalar>
double to_double(const Scalar& x) {
  return ScalarTraits<Scalar>::to_double(x);
}

/// Exact equality for rationals, relative tolerance for floats.
template <class Scalar>
bool approx_equal(const Scalar& a, const Scalar& b, double tol = kTolerance) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return a == b;
  } else {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
  }
}

template <class Scalar>
bool approx_less_equal(const Scalar& a, const Scalar& b, double tol = kTolerance) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return a <= b;
  } else {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return a <= b + tol * scale;
  }
}

/// Parses "p/q", integers and plain or scientific decimals ("0.25", "1e-3")
/// into an exact rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Rounds to 12 significant digits, the precision used in every report.
double round_report(double value);

}  // namespace outerspace
