#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace phaseseed {

/// Mean resultant of unit phasors: direction and length R in [0, 1].
struct CircularSummary {
    double mean = 0.0;  ///< [rad] in (-pi, pi]
    double resultant = 0.0;
    double std = 0.0;   ///< sqrt(-2 ln R) [rad]
};

CircularSummary circular_summary(std::span<const double> angles);

double median(std::vector<double> values);

/// Unbiased (n - 1) sample standard deviation; 0 for fewer than two values.
double sample_std(std::span<const double> values);
double mean(std::span<const double> values);

/// sup |F_n(x) - F(x)| for the empirical CDF of `samples`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Upper critical value of chi-square with `dof` degrees of freedom.
double chi_square_critical(double dof, double significance);
double chi_square_sf(double statistic, double dof);

}  // namespace phaseseed
