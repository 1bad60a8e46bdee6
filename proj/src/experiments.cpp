#include "extmax/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "extmax/errors.hpp"
#include "extmax/graph.hpp"
#include "extmax/parallel.hpp"
#include "extmax/rng.hpp"

namespace extmax {

std::size_t default_workers() {
    if (const char* env = std::getenv("EXT_WORKERS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
    }
    return 1;
}

namespace {

std::size_t effective_workers(std::size_t requested) { return requested == 0 ? default_workers() : requested; }

void check_common(std::size_t n, double p, std::size_t samples) {
    if (samples == 0) throw std::invalid_argument("samples must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
    if (n < 3) throw std::invalid_argument("n must be at least 3");
}

std::string rational_text(const ExtensionCount& c) {
    const auto [num, den] = c.normalized();
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void ExperimentConfig::validate(const ClassDecomposition& d) const {
    check_common(n, p, samples);
    if (n <= static_cast<std::size_t>(d.pattern.h()))
        throw std::invalid_argument("n must exceed the pattern size");
    if (mode == SearchMode::exact) {
        const double size = exact_search_size(n, d);
        if (size > guard) {
            throw GuardError("exact mode would enumerate " + format_real(size) +
                             " root assignments (guard " + format_real(guard) + ")");
        }
    }
}

std::vector<SampleRecord> run_experiment(const ExperimentConfig& cfg) {
    const auto pattern = resolve_pattern_ref(cfg.pattern_ref);
    const auto d = classify_symmetric(pattern);
    cfg.validate(d);
    const auto constants = scaling_constants(d, static_cast<double>(cfg.n), cfg.p);
    const std::size_t budget = cfg.budget == 0 ? default_pruned_budget(d) : cfg.budget;

    return parallel_indexed(cfg.samples, effective_workers(cfg.workers), [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        SampleRecord rec;
        rec.index = i;
        rec.child_seed = mix_seed(cfg.master_seed, i);
        const Graph g = sample_gnp(cfg.n, cfg.p, rec.child_seed);
        const auto result = cfg.mode == SearchMode::exact ? max_extension_exact(g, d, 1, cfg.guard)
                                                          : max_extension_pruned(g, d, budget, cfg.max_set_size);
        rec.raw_max = result.max_value;
        rec.argmax = result.argmax.flattened();
        rec.normalized = (result.max_value.value() - constants.a_n) / constants.b_n;
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rec;
    });
}

void write_records_csv(std::ostream& out, const std::vector<SampleRecord>& records) {
    out << "index,child_seed,raw_max,argmax,normalized\n";
    for (const auto& r : records) {
        out << r.index << ',' << r.child_seed << ',' << rational_text(r.raw_max) << ',';
        for (std::size_t i = 0; i < r.argmax.size(); ++i) out << (i ? " " : "") << r.argmax[i];
        out << ',' << format_real(r.normalized) << '\n';
    }
}

std::vector<double> read_sample_column(std::istream& in, const std::string& column) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("samples file is empty");
    const auto header = split_csv_line(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;
    if (col == header.size()) {
        if (header.size() != 1) throw std::invalid_argument("samples file has no '" + column + "' column");
        col = 0;
    }
    std::vector<double> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (col >= cells.size()) throw std::invalid_argument("samples file: short row");
        double v = 0.0;
        const auto& cell = cells[col];
        auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
            throw std::invalid_argument("samples file: bad number '" + cell + "'");
        out.push_back(v);
    }
    return out;
}

void write_cdf_csv(std::ostream& out, const std::vector<std::pair<double, double>>& table) {
    out << "x,F\n";
    for (const auto& [x, f] : table) out << format_real(x) << ',' << format_real(f) << '\n';
}

std::vector<std::pair<int, std::size_t>> parse_joint_spec(const std::string& text) {
    std::vector<std::pair<int, std::size_t>> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("joint spec items must be k:m");
        int k = 0;
        std::size_t m = 0;
        const std::string ks = item.substr(0, colon);
        const std::string ms = item.substr(colon + 1);
        auto r1 = std::from_chars(ks.data(), ks.data() + ks.size(), k);
        auto r2 = std::from_chars(ms.data(), ms.data() + ms.size(), m);
        if (r1.ec != std::errc() || r1.ptr != ks.data() + ks.size() || r2.ec != std::errc() ||
            r2.ptr != ms.data() + ms.size() || k < 1 || m < 1)
            throw std::invalid_argument("bad joint spec item '" + item + "'");
        out.emplace_back(k, m);
    }
    if (out.empty()) throw std::invalid_argument("joint spec is empty");
    return out;
}

std::vector<JointMaximaRow> joint_maxima_experiment(const JointMaximaConfig& cfg) {
    check_common(cfg.n, cfg.p, cfg.samples);
    if (cfg.spec.empty()) throw std::invalid_argument("joint maxima: empty spec");
    std::vector<ScalingConstants> constants;
    for (const auto& [k, m] : cfg.spec) {
        if (k < 1 || k > 3) throw GuardError("joint maxima: k must be in [1, 3]");
        constants.push_back(kset_constants(static_cast<double>(cfg.n), cfg.p, k));
    }
    return parallel_indexed(cfg.samples, effective_workers(cfg.workers), [&](std::size_t i) {
        JointMaximaRow row;
        row.index = i;
        row.child_seed = mix_seed(cfg.master_seed, i);
        const Graph g = sample_gnp(cfg.n, cfg.p, row.child_seed);
        const auto jm = joint_maxima_with_overlap(g, cfg.spec, cfg.max_set_size);
        for (std::size_t s = 0; s < jm.tops.size(); ++s) {
            row.delta.emplace_back();
            row.xi.emplace_back();
            for (const auto& e : jm.tops[s].entries) {
                row.delta.back().push_back(e.degree);
                row.xi.back().push_back((static_cast<double>(e.degree) - constants[s].a_n) / constants[s].b_n);
            }
        }
        row.overlap = jm.overlap;
        return row;
    });
}

void write_joint_maxima_csv(std::ostream& out, const JointMaximaConfig& cfg, const std::vector<JointMaximaRow>& rows) {
    out << "index,child_seed";
    for (const auto& [k, m] : cfg.spec)
        for (std::size_t j = 1; j <= m; ++j) out << ",delta_k" << k << '_' << j;
    for (const auto& [k, m] : cfg.spec)
        for (std::size_t j = 1; j <= m; ++j) out << ",xi_k" << k << '_' << j;
    out << ",overlap\n";
    for (const auto& row : rows) {
        out << row.index << ',' << row.child_seed;
        for (const auto& block : row.delta)
            for (auto v : block) out << ',' << v;
        for (const auto& block : row.xi)
            for (auto v : block) out << ',' << format_real(v);
        out << ',' << (row.overlap ? 1 : 0) << '\n';
    }
}

RootAssignment random_root_assignment(const ClassDecomposition& d, std::size_t n, Rng& rng) {
    const auto roots = static_cast<std::size_t>(d.root_count());
    if (roots > n) throw std::invalid_argument("random_root_assignment: graph too small");
    // Partial Fisher-Yates: the first |R| entries are a uniform injective sequence.
    std::vector<Vertex> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < roots; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
        std::swap(perm[i], perm[j]);
    }
    std::vector<std::vector<Vertex>> sets;
    std::size_t at = 0;
    for (const auto& c : d.classes) {
        sets.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(at),
                          perm.begin() + static_cast<std::ptrdiff_t>(at + static_cast<std::size_t>(c.size)));
        at += static_cast<std::size_t>(c.size);
    }
    return RootAssignment(d, std::move(sets), n);
}

DeviationResult deviation_experiment(const DeviationConfig& cfg) {
    check_common(cfg.n, cfg.p, cfg.samples);
    if (cfg.tuples == 0) throw std::invalid_argument("tuples must be at least 1");
    if (cfg.eps.empty()) throw std::invalid_argument("deviation: no eps values");
    for (double e : cfg.eps)
        if (!(e > 0.0)) throw std::invalid_argument("deviation: eps must be positive");
    const auto d = classify_symmetric(resolve_pattern_ref(cfg.pattern_ref));
    if (cfg.n <= static_cast<std::size_t>(d.pattern.h()))
        throw std::invalid_argument("n must exceed the pattern size");
    const double n = static_cast<double>(cfg.n);
    const double b_n = scaling_constants(d, n, cfg.p).b_n;

    const auto per_sample = parallel_indexed(cfg.samples, effective_workers(cfg.workers), [&](std::size_t i) {
        const std::uint64_t child = mix_seed(cfg.master_seed, i);
        const Graph g = sample_gnp(cfg.n, cfg.p, child);
        Rng rng(mix_seed(child, 1));
        std::vector<std::size_t> exceed(cfg.eps.size(), 0);
        for (std::size_t t = 0; t < cfg.tuples; ++t) {
            const auto assignment = random_root_assignment(d, cfg.n, rng);
            const double x = extension_count(g, d, assignment).value();
            const auto degrees = class_degrees(g, assignment);
            const bool any_zero = std::any_of(degrees.begin(), degrees.end(), [](double v) { return v <= 0.0; });
            const double y_hat = any_zero ? 0.0 : conditional_expectation_estimate(d, n, cfg.p, degrees);
            for (std::size_t e = 0; e < cfg.eps.size(); ++e)
                if (std::fabs(x - y_hat) > cfg.eps[e] * b_n) ++exceed[e];
        }
        return exceed;
    });

    DeviationResult out;
    out.eps = cfg.eps;
    out.exceed.assign(cfg.eps.size(), 0);
    out.total = cfg.samples * cfg.tuples;
    out.b_n = b_n;
    for (const auto& s : per_sample)
        for (std::size_t e = 0; e < s.size(); ++e) out.exceed[e] += s[e];
    return out;
}

void write_deviation_csv(std::ostream& out, const DeviationResult& result) {
    out << "eps,exceed,total,fraction\n";
    for (std::size_t i = 0; i < result.eps.size(); ++i) {
        out << format_real(result.eps[i]) << ',' << result.exceed[i] << ',' << result.total << ','
            << format_real(result.fraction(i)) << '\n';
    }
}

ExperimentConfig demo_maxdeg_config(std::size_t workers) {
    ExperimentConfig cfg;
    cfg.pattern_ref = "edge";
    cfg.n = 3000;
    cfg.p = 0.5;
    cfg.samples = 300;
    cfg.master_seed = 1;
    cfg.mode = SearchMode::exact;
    cfg.workers = workers;
    return cfg;
}

ExperimentConfig demo_bijective2_config(std::size_t workers) {
    ExperimentConfig cfg;
    cfg.pattern_ref = "bijective_clique:2";
    cfg.n = 500;
    cfg.p = 0.5;
    cfg.samples = 200;
    cfg.master_seed = 1;
    cfg.mode = SearchMode::pruned;
    cfg.workers = workers;
    return cfg;
}

JointMaximaConfig demo_k2_config(std::size_t workers) {
    return JointMaximaConfig{{{2, 2}}, 800, 0.5, 200, 1, workers};
}

DeviationConfig demo_path4_config(std::size_t workers) {
    return DeviationConfig{"path:4", 400, 0.5, 100, 50, 1, {0.5, 1.0}, workers};
}

}  // namespace extmax
