#include "truelearn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace truelearn {

namespace {

// Differences within this relative spread are treated as constant.
constexpr double kZeroSpread = 1e-12;

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Two-sided exact permutation p-value. Twice the centred average ranks are
// integers, so the statistic is compared without rounding.
double exact_permutation_p(std::span<const double> rank_x, std::span<const double> rank_y) {
  const std::size_t n = rank_x.size();
  const auto centred = [n](double r) {
    return static_cast<std::int64_t>(std::llround(2.0 * r)) - static_cast<std::int64_t>(n + 1);
  };
  std::vector<std::int64_t> cx(n);
  std::vector<std::int64_t> cy(n);
  for (std::size_t i = 0; i < n; ++i) {
    cx[i] = centred(rank_x[i]);
    cy[i] = centred(rank_y[i]);
  }
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < n; ++i) observed += cx[i] * cy[i];
  observed = std::abs(observed);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::uint64_t extreme = 0;
  std::uint64_t total = 0;
  do {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += cx[i] * cy[perm[i]];
    if (std::abs(s) >= observed) ++extreme;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

double student_t_sf(double t, double dof) {
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const boost::math::students_t dist(dof);
  return boost::math::cdf(boost::math::complement(dist, t));
}

TTestResult paired_t_test_one_tailed(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired t-test needs equal lengths");
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("paired t-test needs at least 2 pairs");

  std::vector<double> diffs(n);
  for (std::size_t i = 0; i < n; ++i) diffs[i] = b[i] - a[i];
  TTestResult r;
  r.n = n;
  r.mean_difference = mean_of(diffs);

  double ss = 0.0;
  double spread = 0.0;
  for (double d : diffs) {
    ss += (d - r.mean_difference) * (d - r.mean_difference);
    spread = std::max(spread, std::abs(d - r.mean_difference));
  }
  if (spread <= kZeroSpread * std::max(1.0, std::abs(r.mean_difference))) {
    if (r.mean_difference > 0.0) {
      r.t = std::numeric_limits<double>::infinity();
      r.p = 0.0;
    } else if (r.mean_difference < 0.0) {
      r.t = -std::numeric_limits<double>::infinity();
      r.p = 1.0;
    } else {
      r.t = 0.0;
      r.p = 0.5;
    }
    return r;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  r.t = r.mean_difference / (sd / std::sqrt(static_cast<double>(n)));
  r.p = student_t_sf(r.t, static_cast<double>(n - 1));
  return r;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    // Positions start..end-1 hold 1-based ranks start+1..end.
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = rank;
    start = end;
  }
  return ranks;
}

std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("correlation needs equal, non-empty lengths");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<SpearmanResult> srocc(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("srocc needs equal lengths");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("srocc needs at least 3 observations");

  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const auto rho = pearson_correlation(rx, ry);
  if (!rho) return std::nullopt;

  SpearmanResult r;
  r.rho = *rho;
  if (n <= kExactPermutationMaxN) {
    r.exact = true;
    r.p = exact_permutation_p(rx, ry);
  } else if (std::abs(r.rho) >= 1.0) {
    r.p = 0.0;
  } else {
    const double dof = static_cast<double>(n - 2);
    const double t = r.rho * std::sqrt(dof / (1.0 - r.rho * r.rho));
    r.p = std::min(1.0, 2.0 * student_t_sf(std::abs(t), dof));
  }
  return r;
}

}  // namespace truelearn
