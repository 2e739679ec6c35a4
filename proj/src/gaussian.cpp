#include "truelearn/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace truelearn {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// Beyond this argument phi(x) and Q(x) approach the double underflow limit.
constexpr double kTailSwitch = 37.0;

// Below this the truncated mass is treated as empty.
constexpr double kMinMass = 1e-300;

double clamp_unit(double w) { return std::clamp(w, 0.0, 1.0); }

// Mills ratio for large positive x by backward evaluation of the continued
// fraction Q(x)/phi(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))).
double mills_ratio_continued_fraction(double x) {
  double tail = x;
  for (int k = 60; k >= 1; --k) {
    tail = x + k / tail;
  }
  return 1.0 / tail;
}

}  // namespace

Gaussian1D Gaussian1D::from_moments(double mean, double variance) {
  if (std::isnan(variance) || variance <= 0.0) {
    throw std::invalid_argument("Gaussian1D: variance must be positive");
  }
  if (std::isnan(mean)) {
    throw std::invalid_argument("Gaussian1D: mean is NaN");
  }
  if (std::isinf(variance)) {
    return {};
  }
  return {1.0 / variance, mean / variance};
}

Gaussian1D Gaussian1D::from_natural(double precision, double precision_mean) {
  if (std::isnan(precision) || precision < 0.0 || std::isinf(precision)) {
    throw std::invalid_argument("Gaussian1D: precision must be finite and non-negative");
  }
  if (!std::isfinite(precision_mean)) {
    throw std::invalid_argument("Gaussian1D: precision-adjusted mean must be finite");
  }
  return {precision, precision_mean};
}

double Gaussian1D::mean() const {
  return precision_ == 0.0 ? 0.0 : precision_mean_ / precision_;
}

double Gaussian1D::variance() const {
  return precision_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / precision_;
}

Gaussian1D multiply(const Gaussian1D& a, const Gaussian1D& b) {
  return Gaussian1D::from_natural(a.precision() + b.precision(),
                                  a.precision_mean() + b.precision_mean());
}

Gaussian1D divide(const Gaussian1D& a, const Gaussian1D& b) {
  const double precision = a.precision() - b.precision();
  if (precision < 0.0) {
    throw std::domain_error("Gaussian1D: division yields negative precision");
  }
  return Gaussian1D::from_natural(precision, a.precision_mean() - b.precision_mean());
}

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double mills_ratio(double x) {
  if (x >= kTailSwitch) {
    return mills_ratio_continued_fraction(x);
  }
  if (x <= -kTailSwitch) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.5 * std::erfc(x * kInvSqrt2) * kSqrt2Pi * std::exp(0.5 * x * x);
}

TruncationMoments truncated_moments_within(double t, double eps) {
  if (!(eps > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("truncated_moments_within: need eps > 0 and finite t");
  }
  // v is odd in t and w is even; work with t >= 0 so the interval
  // [-eps - t, eps - t] sits at or below zero.
  const double sign = t < 0.0 ? -1.0 : 1.0;
  const double shift = std::abs(t);
  const double lo = -eps - shift;
  const double hi = eps - shift;

  double v = 0.0;
  double w = 0.0;
  if (hi >= 0.0) {
    const double mass = 0.5 * (std::erf(hi * kInvSqrt2) - std::erf(lo * kInvSqrt2));
    if (!(mass > kMinMass)) {
      return {-t, 1.0};
    }
    const double pdf_lo = normal_pdf(lo);
    const double pdf_hi = normal_pdf(hi);
    v = (pdf_lo - pdf_hi) / mass;
    w = v * v + (hi * pdf_hi - lo * pdf_lo) / mass;
  } else {
    // Both ends in the lower tail: scale everything by phi(hi).
    const double ratio = std::exp(-2.0 * eps * shift);  // phi(lo) / phi(hi)
    const double mass = mills_ratio(-hi) - ratio * mills_ratio(-lo);
    if (!(mass > kMinMass) || !std::isfinite(mass)) {
      return {-t, 1.0};
    }
    v = (ratio - 1.0) / mass;
    w = v * v + (hi - lo * ratio) / mass;
  }
  return {sign * v, clamp_unit(w)};
}

TruncationMoments truncated_moments_above(double t, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps) || !std::isfinite(t)) {
    throw std::invalid_argument("truncated_moments_above: need finite eps >= 0 and finite t");
  }
  const double lo = eps - t;
  double v = 0.0;
  if (lo < 0.0) {
    v = normal_pdf(lo) / normal_sf(lo);
  } else {
    v = 1.0 / mills_ratio(lo);
  }
  if (!std::isfinite(v)) {
    return {lo, 1.0};
  }
  return {v, clamp_unit(v * (v - lo))};
}

}  // namespace truelearn
