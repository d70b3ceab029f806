#include "psent/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psent/error.hpp"

namespace psent::stats {

namespace {

void check_series(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::invalid_argument, "paired series differ in length (" +
                                                 std::to_string(x.size()) + " vs " +
                                                 std::to_string(y.size()) + ")");
  }
  if (x.size() < min_n) {
    throw Error(ErrorCode::insufficient_samples,
                "need at least " + std::to_string(min_n) + " paired values, got " +
                    std::to_string(x.size()));
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(x.begin(), x.end(), finite) || !std::all_of(y.begin(), y.end(), finite)) {
    throw Error(ErrorCode::invalid_argument, "paired series contain non-finite values");
  }
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

struct Moments {
  double mean_x = 0, mean_y = 0;
  double var_x = 0, var_y = 0;  // population
  double cov = 0;
};

Moments moments(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  Moments m;
  m.mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  m.mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  // A constant series has exactly zero spread even when its mean rounds.
  const bool cx = is_constant(x);
  const bool cy = is_constant(y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = cx ? 0.0 : x[i] - m.mean_x;
    const double dy = cy ? 0.0 : y[i] - m.mean_y;
    m.var_x += dx * dx;
    m.var_y += dy * dy;
    m.cov += dx * dy;
  }
  m.var_x /= n;
  m.var_y /= n;
  m.cov /= n;
  if (cx) m.mean_x = x.front();
  if (cy) m.mean_y = y.front();
  return m;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank mean((i+1)..(j+1))
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_series(x, y, 2);
  if (is_constant(x) || is_constant(y)) {
    throw Error(ErrorCode::degenerate_statistic, "undefined correlation (zero variance)");
  }
  const auto m = moments(x, y);
  const double r = m.cov / std::sqrt(m.var_x * m.var_y);
  return std::clamp(r, -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_series(x, y, 2);
  if (is_constant(x) || is_constant(y)) {
    throw Error(ErrorCode::degenerate_statistic, "undefined correlation (zero rank variance)");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double ccc(std::span<const double> x, std::span<const double> y) {
  check_series(x, y, 2);
  const auto m = moments(x, y);
  const double shift = m.mean_x - m.mean_y;
  const double denom = m.var_x + m.var_y + shift * shift;
  if (denom == 0.0) {
    throw Error(ErrorCode::degenerate_statistic, "degenerate CCC (zero denominator)");
  }
  // 2*rho*sx*sy == 2*cov; cov is exactly 0 when either series is constant.
  return 2.0 * m.cov / denom;
}

double mae(std::span<const double> x, std::span<const double> y) {
  check_series(x, y, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::abs(x[i] - y[i]);
  return sum / static_cast<double>(x.size());
}

}  // namespace psent::stats
