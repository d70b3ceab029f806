#pragma once

#include <span>
#include <vector>

namespace psent::stats {

// All functions take paired series x (dialogue side) and y (summary side) of
// equal length with finite values. Violations throw psent::Error.

// 1-based ranks; tied values share the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of the average-rank vectors. Requires n >= 2 and
// non-constant x and y.
double spearman(std::span<const double> x, std::span<const double> y);

double pearson(std::span<const double> x, std::span<const double> y);

// Concordance correlation with population (1/n) moments. When exactly one
// series is constant the result is 0.
double ccc(std::span<const double> x, std::span<const double> y);

double mae(std::span<const double> x, std::span<const double> y);

}  // namespace psent::stats
