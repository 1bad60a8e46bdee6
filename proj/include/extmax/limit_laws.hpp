#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "extmax/empirical.hpp"
#include "extmax/pattern.hpp"
#include "extmax/rng.hpp"

namespace extmax {

/// Centering a_n and scale b_n for a normalized maximum (max - a_n) / b_n.
struct ScalingConstants {
    enum class Source { theorem2, kset, theorem1, corollary1, corollary2, corollary3 };

    double a_n = 0.0;
    double b_n = 0.0;
    Source source = Source::theorem2;
};

/// Constants for the maximum extension count of a symmetric pattern. The
/// limit of (max X - a_n) / b_n is the law of LimitLawSpec::from_decomposition.
/// n >= 3, 0 < p < 1.
ScalingConstants scaling_constants(const ClassDecomposition& d, double n, double p);

/// Constants for the maximum common degree of k-sets:
///   a = np^k + sqrt(2k p^k (1-p^k) n ln n) (1 - ln(k!)/(2k ln n) - ln(4 pi k ln n)/(4k ln n))
///   b = sqrt(p^k (1-p^k) n / (2k ln n))
ScalingConstants kset_constants(double n, double p, int k);

// Closed forms for special patterns. Their b_n already absorbs the weight of
// the limit law, so the limit is standard: Gumbel for theorem1 and
// corollary1, eta_1 + ... + eta_m for corollary2, eta_1 + eta_2 for corollary3.
ScalingConstants theorem1_constants(double n, double p);
ScalingConstants corollary1_constants(double n, double p, int k, int g);
ScalingConstants corollary2_constants(double n, double p, int m);
ScalingConstants corollary3_constants(double n, double p, int path_length);

/// exp(-exp(-x)).
double gumbel_cdf(double x);

/// exp(-exp(-x)) * sum_{j<m} exp(-jx)/j!, the law of the m-th largest point.
double mth_max_cdf(double x, int m);

/// Ordered vector (eta_1 > ... > eta_m): eta_j = -ln(E_1 + ... + E_j) with
/// E_i standard exponential.
std::vector<double> sample_eta(int m, Rng& rng);

/// One r-indexed block of the limit law: coefficient * sum_j weights[j] * eta_j.
struct LimitLawTerm {
    double coefficient = 1.0;
    std::vector<int> weights;  // descending, each >= 1
};

class LimitLawSpec {
public:
    explicit LimitLawSpec(std::vector<LimitLawTerm> terms);

    /// coefficient_i = sqrt((1 - p^{k_i}) / (k_i p^{k_i})), weights g_{i,.}.
    /// With `unit_scale` (single class size only) the coefficient is divided
    /// out, which removes the dependence on p.
    static LimitLawSpec from_decomposition(const ClassDecomposition& d, double p, bool unit_scale = false);

    const std::vector<LimitLawTerm>& terms() const noexcept { return terms_; }

private:
    std::vector<LimitLawTerm> terms_;
};

double sample_limit_law(const LimitLawSpec& spec, Rng& rng);

/// `draws` samples of the law.
EmpiricalDistribution sample_limit_distribution(const LimitLawSpec& spec, std::size_t draws, Rng& rng);

/// Empirical CDF of `sample_count` draws on an ascending grid (sample_count >= 1000).
std::vector<std::pair<double, double>> limit_cdf_mc(const LimitLawSpec& spec, std::size_t sample_count,
                                                    std::span<const double> grid, Rng& rng);

/// Ei(y) = integral_{-inf}^{y} e^t / t dt for y < 0. Power series for
/// |y| <= 1, continued fraction for |y| > 1.
double exp_integral_Ei(double y);

/// -exp(-x) * Ei(-exp(-x/2)): density of eta_1 + eta_2.
double density_m2(double x);

/// Lower integration cutoff of cdf_m2. The mass below it is at most
/// mth_max_cdf(kCdfM2Cutoff / 2, 2), far below 1e-300.
inline constexpr double kCdfM2Cutoff = -15.0;

/// CDF of eta_1 + eta_2 by adaptive Gauss-Kronrod quadrature of density_m2.
double cdf_m2(double x);

inline constexpr std::uint64_t kLawSeed = 0x6c696d69746c6177ULL;
inline constexpr std::size_t kLawDraws = 1'000'000;

/// Law of eta_1 + ... + eta_m evaluated from a fixed sample.
class BijectiveCliqueLaw {
public:
    BijectiveCliqueLaw(int m, std::size_t draws = kLawDraws, std::uint64_t seed = kLawSeed);

    int m() const noexcept { return m_; }
    double cdf(double x) const { return sample_.cdf(x); }
    const EmpiricalDistribution& sample() const noexcept { return sample_; }

private:
    int m_;
    EmpiricalDistribution sample_;
};

/// Shared default-sized BijectiveCliqueLaw(m); m >= 2.
double cdf_bijective_m(double x, int m);

/// Asymptotic two-sided tail 1 / (n^x sqrt(pi x ln n)) of a common degree; x > 0.
double tail_probability_bound(double n, double p, int k, double x);

/// np^l + sqrt(2 l n p^l (1 - p^l) ln n).
double gamma_cap(double n, double p, int l);

/// Pr(Bin(trials_n, q) >= threshold), summed exactly in log space.
double binomial_upper_tail(std::size_t trials_n, double q, std::size_t threshold);

/// Inverse-CDF sampler for Bin(trials_n, q) driven by uniform01() draws.
class BinomialSampler {
public:
    BinomialSampler(std::size_t trials_n, double q);
    std::size_t operator()(Rng& rng) const;
    std::size_t trials() const noexcept { return cdf_.size() - 1; }
    double q() const noexcept { return q_; }

private:
    double q_;
    std::vector<double> cdf_;
};

/// Monte Carlo estimate of Pr(deg(U) > a_{n,k} + x b_{n,k}) for a fixed k-set,
/// deg(U) ~ Bin(n - k, p^k). The draws come from a binomial tilted so that
/// its mean sits at the threshold, reweighted by the likelihood ratio.
struct TailEstimate {
    double probability = 0.0;
    double scaled = 0.0;   // probability * n^k / k!
    double std_error = 0.0;
    std::size_t threshold = 0;  // smallest degree counted
};
TailEstimate simulate_common_degree_tail(std::size_t n, double p, int k, double x, std::size_t trials, Rng& rng);

}  // namespace extmax
