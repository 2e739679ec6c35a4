#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace truelearn {

struct TTestResult {
  double t = 0.0;
  double p = 0.5;  ///< one-tailed, alternative mean(b - a) > 0
  double mean_difference = 0.0;
  std::size_t n = 0;
};

/// Paired t-test of b against a with n - 1 degrees of freedom.
///
/// When the differences have (numerically) zero spread the statistic is
/// degenerate: p = 0 if the mean difference is positive, 1 if negative and
/// 0.5 if zero, with t = +inf, -inf or 0 respectively. Throws
/// std::invalid_argument if the lengths differ or n < 2.
TTestResult paired_t_test_one_tailed(std::span<const double> a, std::span<const double> b);

/// 1-based ranks; tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation; nullopt when either vector is constant.
std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y);

/// Samples up to this size get an exact permutation p-value.
inline constexpr std::size_t kExactPermutationMaxN = 9;

struct SpearmanResult {
  double rho = 0.0;
  double p = 1.0;  ///< two-sided
  bool exact = false;
};

/// Spearman rank-order correlation. The p-value enumerates all permutations
/// for n <= kExactPermutationMaxN and uses the t approximation with n - 2
/// degrees of freedom above that. nullopt when either vector is constant.
/// Throws std::invalid_argument if the lengths differ or n < 3.
std::optional<SpearmanResult> srocc(std::span<const double> x, std::span<const double> y);

/// Upper tail probability of Student's t distribution.
double student_t_sf(double t, double dof);

}  // namespace truelearn
