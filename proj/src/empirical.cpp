#include "extmax/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extmax {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (std::isnan(v)) throw std::invalid_argument("empirical distribution: NaN sample");
    }
    std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double x) const {
    if (values_.empty()) throw std::logic_error("empirical distribution is empty");
    auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::cdf_left(double x) const {
    if (values_.empty()) throw std::logic_error("empirical distribution is empty");
    auto it = std::lower_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double ks_distance(const EmpiricalDistribution& e, const std::function<double(double)>& cdf) {
    if (e.empty()) throw std::invalid_argument("ks_distance: empty sample");
    const auto values = e.values();
    const auto n = static_cast<double>(values.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        worst = std::max(worst, static_cast<double>(i + 1) / n - f);
        worst = std::max(worst, f - static_cast<double>(i) / n);
    }
    return std::clamp(worst, 0.0, 1.0);
}

}  // namespace extmax
