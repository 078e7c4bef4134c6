#include "phaseseed/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "phaseseed/errors.hpp"

namespace phaseseed {

CircularSummary circular_summary(std::span<const double> angles) {
    if (angles.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, 0.0, nan};
    }
    double c = 0.0;
    double s = 0.0;
    for (const double a : angles) {
        c += std::cos(a);
        s += std::sin(a);
    }
    const double n = static_cast<double>(angles.size());
    const double R = std::min(1.0, std::hypot(c, s) / n);
    const double sd = R > 0.0 ? std::sqrt(std::max(0.0, -2.0 * std::log(R))) : std::numeric_limits<double>::infinity();
    return {std::atan2(s, c), R, sd};
}

double median(std::vector<double> values) {
    if (values.empty()) throw DomainError("median of an empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double mean(std::span<const double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double acc = 0.0;
    for (const double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw DomainError("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

double chi_square_critical(double dof, double significance) {
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), significance));
}

double chi_square_sf(double statistic, double dof) {
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), statistic));
}

}  // namespace phaseseed
