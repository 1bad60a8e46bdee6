#pragma once

#include <functional>
#include <span>
#include <vector>

namespace extmax {

/// Sorted sample with a right-continuous step CDF.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    std::span<const double> values() const noexcept { return values_; }

    /// Fraction of sample values <= x.
    double cdf(double x) const;
    /// Fraction of sample values < x.
    double cdf_left(double x) const;

private:
    std::vector<double> values_;
};

/// sup_x |F_hat(x) - F(x)|, evaluated at the sample points using both
/// one-sided limits of the step function. Throws on an empty sample.
double ks_distance(const EmpiricalDistribution& e, const std::function<double(double)>& cdf);

}  // namespace extmax
