#include "extmax/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace extmax {

namespace {

void check_domain(double n, double p) {
    if (!(n >= 3.0)) throw std::invalid_argument("scaling constants need n >= 3");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("scaling constants need 0 < p < 1");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

double choose2(int m) { return m * (m - 1) / 2.0; }

// 1 - ln(k!)/(2k ln n) - ln(4 pi k ln n)/(4k ln n)
double second_order(double n, int k) {
    const double ln_n = std::log(n);
    return 1.0 - std::log(factorial(k)) / (2.0 * k * ln_n) -
           std::log(4.0 * std::numbers::pi * k * ln_n) / (4.0 * k * ln_n);
}

}  // namespace

ScalingConstants scaling_constants(const ClassDecomposition& d, double n, double p) {
    check_domain(n, p);
    const double ln_n = std::log(n);
    const double prefactor = std::pow(n, d.s + d.g - 1) * std::pow(p, d.f) / static_cast<double>(d.norm);

    double weight_exponent = 0.0;  // sum_i k_i g_i
    for (const auto& grp : d.groups) weight_exponent += grp.k * grp.g_sum();

    double spread = 0.0;
    for (const auto& grp : d.groups) {
        const int k = grp.k;
        const double pk = std::pow(p, k);
        // Power of p multiplying the i-th first-order term: all class weights
        // except one factor of p^{k_i}. For a single class size this is
        // p^{k_1 (g_1 - 1)}.
        spread += grp.g_sum() * std::pow(p, weight_exponent - k) * std::sqrt(k * pk * (1.0 - pk)) *
                  second_order(n, k);
    }
    ScalingConstants out;
    out.a_n = prefactor * (n * std::pow(p, weight_exponent) + std::sqrt(2.0 * n * ln_n) * spread);
    out.b_n = prefactor * std::sqrt(n / (2.0 * ln_n)) * std::pow(p, weight_exponent);
    out.source = ScalingConstants::Source::theorem2;
    return out;
}

ScalingConstants kset_constants(double n, double p, int k) {
    check_domain(n, p);
    if (k < 1) throw std::invalid_argument("kset_constants: k must be positive");
    const double ln_n = std::log(n);
    const double pk = std::pow(p, k);
    ScalingConstants out;
    out.a_n = n * pk + std::sqrt(2.0 * k * pk * (1.0 - pk) * n * ln_n) * second_order(n, k);
    out.b_n = std::sqrt(pk * (1.0 - pk) * n / (2.0 * k * ln_n));
    out.source = ScalingConstants::Source::kset;
    return out;
}

ScalingConstants theorem1_constants(double n, double p) {
    check_domain(n, p);
    const double ln_n = std::log(n);
    ScalingConstants out;
    out.a_n = p * n + std::sqrt(2.0 * p * (1.0 - p) * n * ln_n) *
                          (1.0 - std::log(ln_n) / (4.0 * ln_n) -
                           std::log(2.0 * std::sqrt(std::numbers::pi)) / (2.0 * ln_n));
    out.b_n = std::sqrt(p * (1.0 - p) * n / (2.0 * ln_n));
    out.source = ScalingConstants::Source::theorem1;
    return out;
}

ScalingConstants corollary1_constants(double n, double p, int k, int g) {
    check_domain(n, p);
    if (k < 1 || g < 1) throw std::invalid_argument("corollary1_constants: k, g must be positive");
    const double ln_n = std::log(n);
    const double pk = std::pow(p, k);
    ScalingConstants out;
    out.a_n = std::pow(n * pk, g - 1) * std::pow(p, choose2(g)) / factorial(g) *
              (n * pk + std::sqrt(2.0 * n * ln_n) * g * std::sqrt(k * pk * (1.0 - pk)) *
                            (1.0 - std::log(factorial(k)) / (2.0 * k * ln_n) -
                             std::log(4.0 * std::numbers::pi * k * ln_n) / (4.0 * k * ln_n)));
    out.b_n = std::pow(n, g - 1) * std::pow(p, choose2(g) + k * g) / factorial(g - 1) *
              std::sqrt(n * (1.0 - pk) / (2.0 * k * pk * ln_n));
    out.source = ScalingConstants::Source::corollary1;
    return out;
}

ScalingConstants corollary2_constants(double n, double p, int m) {
    check_domain(n, p);
    if (m < 2) throw std::invalid_argument("corollary2_constants: m must be >= 2");
    const double ln_n = std::log(n);
    const double lead = std::pow(n * p, m - 1) * std::pow(p, choose2(m));
    ScalingConstants out;
    out.a_n = lead * (n * p + std::sqrt(2.0 * n * ln_n) * m * std::sqrt(p * (1.0 - p)) *
                                  (1.0 - std::log(4.0 * std::numbers::pi * ln_n) / (4.0 * ln_n)));
    out.b_n = lead * std::sqrt(n * p * (1.0 - p) / (2.0 * ln_n));
    out.source = ScalingConstants::Source::corollary2;
    return out;
}

ScalingConstants corollary3_constants(double n, double p, int path_length) {
    check_domain(n, p);
    if (path_length < 4) throw std::invalid_argument("corollary3_constants: path length must be >= 4");
    const double ln_n = std::log(n);
    const double lead = std::pow(n * p, path_length - 2) * p;
    ScalingConstants out;
    out.a_n = lead * (n * p + 2.0 * std::sqrt(2.0 * n * ln_n * p * (1.0 - p)) *
                                  (1.0 - std::log(4.0 * std::numbers::pi * ln_n) / (4.0 * ln_n)));
    out.b_n = lead * std::sqrt(n * p * (1.0 - p) / (2.0 * ln_n));
    out.source = ScalingConstants::Source::corollary3;
    return out;
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double mth_max_cdf(double x, int m) {
    if (m < 1) throw std::invalid_argument("mth_max_cdf: m must be positive");
    const double t = std::exp(-x);
    if (std::isinf(t)) return 0.0;
    // Pr(Poisson(t) <= m - 1) = Q(m, t)
    return boost::math::gamma_q(static_cast<double>(m), t);
}

std::vector<double> sample_eta(int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("sample_eta: m must be positive");
    std::vector<double> out(static_cast<std::size_t>(m));
    double arrival = 0.0;
    for (auto& eta : out) {
        arrival += rng.exponential();
        eta = -std::log(arrival);
    }
    return out;
}

LimitLawSpec::LimitLawSpec(std::vector<LimitLawTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("limit law needs at least one term");
    for (const auto& t : terms_) {
        if (!(t.coefficient > 0.0) || !std::isfinite(t.coefficient))
            throw std::invalid_argument("limit law coefficients must be positive");
        if (t.weights.empty()) throw std::invalid_argument("limit law term has no weights");
        for (std::size_t j = 0; j < t.weights.size(); ++j) {
            if (t.weights[j] < 1) throw std::invalid_argument("limit law weights must be positive integers");
            if (j > 0 && t.weights[j] > t.weights[j - 1])
                throw std::invalid_argument("limit law weights must be descending");
        }
    }
}

LimitLawSpec LimitLawSpec::from_decomposition(const ClassDecomposition& d, double p, bool unit_scale) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("limit law needs 0 < p < 1");
    if (unit_scale && d.r() != 1)
        throw std::invalid_argument("unit-scale normalization exists only for a single class size");
    std::vector<LimitLawTerm> terms;
    for (const auto& grp : d.groups) {
        const double pk = std::pow(p, grp.k);
        const double c = unit_scale ? 1.0 : std::sqrt((1.0 - pk) / (grp.k * pk));
        terms.push_back(LimitLawTerm{c, grp.g});
    }
    return LimitLawSpec(std::move(terms));
}

double sample_limit_law(const LimitLawSpec& spec, Rng& rng) {
    double total = 0.0;
    for (const auto& term : spec.terms()) {
        const auto eta = sample_eta(static_cast<int>(term.weights.size()), rng);
        double block = 0.0;
        for (std::size_t j = 0; j < eta.size(); ++j) block += term.weights[j] * eta[j];
        total += term.coefficient * block;
    }
    return total;
}

EmpiricalDistribution sample_limit_distribution(const LimitLawSpec& spec, std::size_t draws, Rng& rng) {
    std::vector<double> values(draws);
    for (auto& v : values) v = sample_limit_law(spec, rng);
    return EmpiricalDistribution(std::move(values));
}

std::vector<std::pair<double, double>> limit_cdf_mc(const LimitLawSpec& spec, std::size_t sample_count,
                                                    std::span<const double> grid, Rng& rng) {
    if (grid.empty()) throw std::invalid_argument("limit_cdf_mc: empty grid");
    if (sample_count < 1000) throw std::invalid_argument("limit_cdf_mc: need at least 1000 samples");
    if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("limit_cdf_mc: grid must ascend");
    const auto sample = sample_limit_distribution(spec, sample_count, rng);
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) out.emplace_back(x, sample.cdf(x));
    return out;
}

double exp_integral_Ei(double y) {
    if (!(y < 0.0)) throw std::domain_error("exp_integral_Ei: argument must be negative");
    const double x = -y;  // Ei(-x) = -E1(x)
    constexpr double euler_gamma = 0.57721566490153286061;
    constexpr double eps = 1e-16;
    if (x <= 1.0) {
        double sum = 0.0;
        double term = 1.0;  // (-x)^k / k!
        for (int k = 1; k < 100; ++k) {
            term *= -x / k;
            const double add = term / k;
            sum += add;
            if (std::fabs(add) < eps * std::fabs(sum)) break;
        }
        // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        return -(-euler_gamma - std::log(x) - sum);
    }
    // Modified Lentz evaluation of the continued fraction for E1.
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double dd = 1.0 / b;
    double h = dd;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        dd = 1.0 / (an * dd + b);
        c = b + an / c;
        const double del = c * dd;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return -h * std::exp(-x);
}

double density_m2(double x) {
    const double y = std::exp(-x / 2.0);
    if (y > 700.0) return 0.0;  // e^{-x} e^{-y} / y underflows
    return -std::exp(-x) * exp_integral_Ei(-y);
}

double cdf_m2(double x) {
    if (x <= kCdfM2Cutoff) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    const double value = gauss_kronrod<double, 61>::integrate(density_m2, kCdfM2Cutoff, x, 20, 1e-13);
    return std::clamp(value, 0.0, 1.0);
}

BijectiveCliqueLaw::BijectiveCliqueLaw(int m, std::size_t draws, std::uint64_t seed) : m_(m) {
    if (m < 2) throw std::invalid_argument("bijective clique law needs m >= 2");
    if (draws == 0) throw std::invalid_argument("bijective clique law needs draws");
    Rng rng(seed);
    std::vector<double> values(draws);
    for (auto& v : values) {
        double total = 0.0;
        for (double eta : sample_eta(m, rng)) total += eta;
        v = total;
    }
    sample_ = EmpiricalDistribution(std::move(values));
}

double cdf_bijective_m(double x, int m) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<BijectiveCliqueLaw>> cache;
    const BijectiveCliqueLaw* law = nullptr;
    {
        std::lock_guard lock(mutex);
        auto& slot = cache[m];
        if (!slot) slot = std::make_unique<BijectiveCliqueLaw>(m);
        law = slot.get();
    }
    return law->cdf(x);
}

double tail_probability_bound(double n, double p, int k, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("tail_probability_bound: x must be positive");
    check_domain(n, p);
    if (k < 1) throw std::invalid_argument("tail_probability_bound: k must be positive");
    return 1.0 / (std::pow(n, x) * std::sqrt(std::numbers::pi * x * std::log(n)));
}

double gamma_cap(double n, double p, int l) {
    check_domain(n, p);
    const double pl = std::pow(p, l);
    return n * pl + std::sqrt(2.0 * l * n * pl * (1.0 - pl) * std::log(n));
}

namespace {

double log_binomial_pmf(std::size_t n, double q, std::size_t j) {
    const auto nn = static_cast<double>(n);
    const auto jj = static_cast<double>(j);
    return std::lgamma(nn + 1.0) - std::lgamma(jj + 1.0) - std::lgamma(nn - jj + 1.0) + jj * std::log(q) +
           (nn - jj) * std::log1p(-q);
}

}  // namespace

double binomial_upper_tail(std::size_t trials_n, double q, std::size_t threshold) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("binomial_upper_tail: q must lie in (0, 1)");
    long double total = 0.0L;
    for (std::size_t j = threshold; j <= trials_n; ++j) total += std::exp(static_cast<long double>(log_binomial_pmf(trials_n, q, j)));
    return static_cast<double>(total);
}

BinomialSampler::BinomialSampler(std::size_t trials_n, double q) : q_(q), cdf_(trials_n + 1) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("BinomialSampler: q must lie in (0, 1)");
    long double acc = 0.0L;
    for (std::size_t j = 0; j <= trials_n; ++j) {
        acc += std::exp(static_cast<long double>(log_binomial_pmf(trials_n, q, j)));
        cdf_[j] = static_cast<double>(acc);
    }
    cdf_.back() = 1.0;
}

std::size_t BinomialSampler::operator()(Rng& rng) const {
    const double u = rng.uniform01();
    return static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
}

TailEstimate simulate_common_degree_tail(std::size_t n, double p, int k, double x, std::size_t trials, Rng& rng) {
    if (trials == 0) throw std::invalid_argument("simulate_common_degree_tail: trials must be positive");
    if (n <= static_cast<std::size_t>(k)) throw std::invalid_argument("simulate_common_degree_tail: need n > k");
    const auto c = kset_constants(static_cast<double>(n), p, k);
    const double level = c.a_n + x * c.b_n;
    const std::size_t bin_n = n - static_cast<std::size_t>(k);
    const double q = std::pow(p, k);

    TailEstimate out;
    out.threshold = static_cast<std::size_t>(std::max(0.0, std::floor(level) + 1.0));
    if (out.threshold > bin_n) return out;

    const double tilt = std::clamp(static_cast<double>(out.threshold) / static_cast<double>(bin_n), q, 1.0 - 1e-9);
    const BinomialSampler sampler(bin_n, tilt);
    const double log_ratio_hit = std::log(q / tilt);
    const double log_ratio_miss = std::log1p(-q) - std::log1p(-tilt);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::size_t j = sampler(rng);
        if (j < out.threshold) continue;
        const double w = std::exp(static_cast<double>(j) * log_ratio_hit +
                                  static_cast<double>(bin_n - j) * log_ratio_miss);
        sum += w;
        sum_sq += w * w;
    }
    const auto t = static_cast<double>(trials);
    out.probability = sum / t;
    const double var = std::max(0.0, sum_sq / t - out.probability * out.probability);
    out.std_error = std::sqrt(var / t);
    out.scaled = out.probability * std::pow(static_cast<double>(n), k) / factorial(k);
    return out;
}

}  // namespace extmax
