#pragma once

#include <limits>
#include <stdexcept>

namespace truelearn {

/// Univariate Gaussian belief.
///
/// Stored in natural parameters (precision and precision-adjusted mean) so
/// that products and quotients of Gaussians are plain additions. A precision
/// of zero is the uninformative message; negative precision is never stored.
class Gaussian1D {
 public:
  /// Uninformative (infinite variance).
  constexpr Gaussian1D() = default;

  /// Throws std::invalid_argument if variance <= 0 or is NaN. An infinite
  /// variance yields the uninformative Gaussian.
  static Gaussian1D from_moments(double mean, double variance);
  static Gaussian1D from_natural(double precision, double precision_mean);
  static constexpr Gaussian1D uninformative() { return {}; }

  double precision() const { return precision_; }
  double precision_mean() const { return precision_mean_; }

  /// Zero for the uninformative Gaussian.
  double mean() const;
  /// +inf for the uninformative Gaussian.
  double variance() const;

  bool is_uninformative() const { return precision_ == 0.0; }

  friend bool operator==(const Gaussian1D&, const Gaussian1D&) = default;

 private:
  constexpr Gaussian1D(double precision, double precision_mean)
      : precision_(precision), precision_mean_(precision_mean) {}

  double precision_ = 0.0;
  double precision_mean_ = 0.0;
};

Gaussian1D multiply(const Gaussian1D& a, const Gaussian1D& b);

/// Throws std::domain_error when precision(a) < precision(b).
Gaussian1D divide(const Gaussian1D& a, const Gaussian1D& b);

inline Gaussian1D operator*(const Gaussian1D& a, const Gaussian1D& b) { return multiply(a, b); }
inline Gaussian1D operator/(const Gaussian1D& a, const Gaussian1D& b) { return divide(a, b); }

/// Standard normal density, CDF and upper-tail CDF.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);

/// Mills ratio Q(x)/phi(x) of the standard normal. Finite for every finite x
/// with x > -37; uses a continued fraction for x >= 37 where phi underflows.
double mills_ratio(double x);

/// Moment corrections of a truncated standard normal.
///
/// `v` is the additive mean correction and `w` the variance reduction: if
/// Z ~ N(0, 1) is truncated to the region, E[Z] = v and Var[Z] = 1 - w.
struct TruncationMoments {
  double v = 0.0;
  double w = 0.0;
};

/// Performance difference D ~ N(t, 1) conditioned on |D| <= eps.
///
/// Equivalent to Z = D - t truncated to [-eps - t, eps - t]. When the mass of
/// the interval underflows (below 1e-300 after scaling) the result saturates
/// to the point-mass limit v = -t, w = 1.
TruncationMoments truncated_moments_within(double t, double eps);

/// Performance difference D ~ N(t, 1) conditioned on D > eps.
TruncationMoments truncated_moments_above(double t, double eps);

}  // namespace truelearn
