#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extmax/empirical.hpp"
#include "extmax/extremes.hpp"
#include "extmax/limit_laws.hpp"
#include "extmax/pattern.hpp"

namespace extmax {

/// Parallelism used when a config asks for 0 workers: $EXT_WORKERS, else 1.
std::size_t default_workers();

/// 17 significant digits, shortest exponent form where needed.
std::string format_real(double x);

struct ExperimentConfig {
    std::string pattern_ref;  // preset `name:param` or JSON file path
    std::size_t n = 0;
    double p = 0.5;
    std::size_t samples = 1;
    std::uint64_t master_seed = 0;
    SearchMode mode = SearchMode::exact;
    std::size_t budget = 0;  // pruned mode; 0 selects default_pruned_budget
    std::size_t workers = 0;
    double guard = kDefaultSearchGuard;
    int max_set_size = kDefaultMaxSetSize;  // class-size guard of pruned mode

    /// Throws std::invalid_argument for malformed values and GuardError when
    /// exact mode would exceed the guard.
    void validate(const ClassDecomposition& d) const;
};

struct SampleRecord {
    std::size_t index = 0;
    std::uint64_t child_seed = 0;
    ExtensionCount raw_max;
    std::vector<Vertex> argmax;  // flattened root assignment
    double normalized = 0.0;     // (raw_max - a_n) / b_n
    double wall_time = 0.0;      // seconds; not written to CSV
};

/// One record per sample, ordered by index. Sample i uses the graph
/// sample_gnp(n, p, mix_seed(master_seed, i)).
std::vector<SampleRecord> run_experiment(const ExperimentConfig& cfg);

/// Header `index,child_seed,raw_max,argmax,normalized`. raw_max is an exact
/// integer or `num/den`; argmax vertices are space separated.
void write_records_csv(std::ostream& out, const std::vector<SampleRecord>& records);

/// Reads the `normalized` column of a records file (or the only column of a
/// single-column file).
std::vector<double> read_sample_column(std::istream& in, const std::string& column = "normalized");

/// Header `x,F`.
void write_cdf_csv(std::ostream& out, const std::vector<std::pair<double, double>>& table);

struct JointMaximaConfig {
    std::vector<std::pair<int, std::size_t>> spec;  // (k_i, m_i)
    std::size_t n = 0;
    double p = 0.5;
    std::size_t samples = 1;
    std::uint64_t master_seed = 0;
    std::size_t workers = 0;
    int max_set_size = kDefaultMaxSetSize;
};

struct JointMaximaRow {
    std::size_t index = 0;
    std::uint64_t child_seed = 0;
    std::vector<std::vector<std::size_t>> delta;  // delta[i][j]
    std::vector<std::vector<double>> xi;          // (delta - a_{n,k_i}) / b_{n,k_i}
    bool overlap = false;
};

std::vector<JointMaximaRow> joint_maxima_experiment(const JointMaximaConfig& cfg);

/// Header `index,child_seed,delta_k<k>_<j>...,xi_k<k>_<j>...,overlap`.
void write_joint_maxima_csv(std::ostream& out, const JointMaximaConfig& cfg, const std::vector<JointMaximaRow>& rows);

/// Parses `k:m[,k:m...]`.
std::vector<std::pair<int, std::size_t>> parse_joint_spec(const std::string& text);

struct DeviationConfig {
    std::string pattern_ref;
    std::size_t n = 0;
    double p = 0.5;
    std::size_t samples = 1;
    std::size_t tuples = 1;  // per sampled graph
    std::uint64_t master_seed = 0;
    std::vector<double> eps{0.5};
    std::size_t workers = 0;
};

struct DeviationResult {
    std::vector<double> eps;
    std::vector<std::size_t> exceed;  // per eps
    std::size_t total = 0;
    double b_n = 0.0;

    double fraction(std::size_t i) const {
        return total == 0 ? 0.0 : static_cast<double>(exceed[i]) / static_cast<double>(total);
    }
};

/// For uniformly random disjoint root assignments T, counts how often
/// |X(T) - Y_hat(T)| > eps * b_n, with Y_hat from conditional_expectation_estimate.
DeviationResult deviation_experiment(const DeviationConfig& cfg);

/// Header `eps,exceed,total,fraction`.
void write_deviation_csv(std::ostream& out, const DeviationResult& result);

// Named desk-scale configurations, all with master seed 1.
/// edge pattern, n = 3000, p = 1/2, 300 samples, exact search.
ExperimentConfig demo_maxdeg_config(std::size_t workers = 0);
/// bijective_clique:2, n = 500, p = 1/2, 200 samples, pruned search.
ExperimentConfig demo_bijective2_config(std::size_t workers = 0);
/// k = 2, top two, n = 800, p = 1/2, 200 samples.
JointMaximaConfig demo_k2_config(std::size_t workers = 0);
/// path:4, n = 400, p = 1/2, 100 samples x 50 tuples, eps 0.5 and 1.
DeviationConfig demo_path4_config(std::size_t workers = 0);

/// Uniformly random assignment of pairwise-disjoint class sets.
RootAssignment random_root_assignment(const ClassDecomposition& d, std::size_t n, Rng& rng);

}  // namespace extmax
