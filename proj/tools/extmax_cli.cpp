// Command-line front end: classification, constants, Monte Carlo campaigns
// and goodness-of-fit against the limit laws.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "extmax/errors.hpp"
#include "extmax/experiments.hpp"
#include "extmax/limit_laws.hpp"
#include "extmax/pattern.hpp"

namespace {

using namespace extmax;

constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot open '" + path + "' for writing");
    body(out);
    if (!out) throw OutputError("failed writing '" + path + "'");
}

SearchMode parse_mode(const std::string& text) {
    if (text == "exact") return SearchMode::exact;
    if (text == "pruned") return SearchMode::pruned;
    throw std::invalid_argument("mode must be exact or pruned");
}

std::vector<double> parse_grid(const std::string& text) {
    // lo:hi:count
    std::istringstream in(text);
    double lo = 0;
    double hi = 0;
    std::size_t count = 0;
    char c1 = 0;
    char c2 = 0;
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2 || !(hi > lo))
        throw std::invalid_argument("grid must be lo:hi:count with lo < hi and count >= 2");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

nlohmann::json decomposition_json(const ClassDecomposition& d) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& grp : d.groups) classes.push_back({{"k", grp.k}, {"m", grp.m()}, {"g", grp.g}});
    nlohmann::json root_classes = nlohmann::json::array();
    for (const auto& c : d.classes) root_classes.push_back(c.roots);
    return {{"h", d.pattern.h()}, {"roots", d.root_count()}, {"r", d.r()}, {"classes", classes},
            {"root_classes", root_classes}, {"g", d.g}, {"s", d.s}, {"f", d.f}, {"norm", d.norm}};
}

std::function<double(double)> law_cdf(const std::string& law, const std::string& pattern_ref, std::uint64_t seed) {
    if (law == "gumbel") return gumbel_cdf;
    if (law == "m2") return cdf_m2;
    const auto colon = law.find(':');
    const std::string kind = law.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : law.substr(colon + 1);
    if (kind == "mthmax" && !arg.empty()) {
        const int m = std::stoi(arg);
        if (m < 1) throw std::invalid_argument("mthmax needs m >= 1");
        return [m](double x) { return mth_max_cdf(x, m); };
    }
    if (kind == "pattern" && !arg.empty()) {
        if (pattern_ref.empty()) throw std::invalid_argument("law pattern:<p> needs --pattern");
        const double p = std::stod(arg);
        const auto d = classify_symmetric(resolve_pattern_ref(pattern_ref));
        Rng rng(seed);
        auto sample = std::make_shared<EmpiricalDistribution>(
            sample_limit_distribution(LimitLawSpec::from_decomposition(d, p), kLawDraws, rng));
        return [sample](double x) { return sample->cdf(x); };
    }
    throw std::invalid_argument("unknown law '" + law + "'");
}

void print_fit(const std::vector<double>& values, const std::function<double(double)>& cdf) {
    const EmpiricalDistribution e(values);
    std::cout << "samples," << e.size() << "\nks," << format_real(ks_distance(e, cdf)) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum extension counts in G(n, p)"};
    app.require_subcommand(1);

    // classify
    std::string pattern_ref;
    auto* classify = app.add_subcommand("classify", "Symmetric classification of a rooted pattern");
    classify->add_option("pattern", pattern_ref, "Preset name[:param] or JSON file")->required();

    // constants
    double n_real = 0;
    double p = 0.5;
    auto* constants = app.add_subcommand("constants", "Scaling constants a_n, b_n");
    constants->add_option("pattern", pattern_ref)->required();
    constants->add_option("--n", n_real)->required();
    constants->add_option("--p", p)->required();

    // simulate
    ExperimentConfig sim;
    std::string mode_text = "exact";
    std::string out_path;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo of the normalized maximum");
    simulate->add_option("pattern", sim.pattern_ref)->required();
    simulate->add_option("--n", sim.n)->required();
    simulate->add_option("--p", sim.p)->required();
    simulate->add_option("--samples", sim.samples)->required();
    simulate->add_option("--seed", sim.master_seed)->required();
    simulate->add_option("--mode", mode_text)->check(CLI::IsMember({"exact", "pruned"}));
    simulate->add_option("--budget", sim.budget, "Candidate pool size for pruned mode");
    simulate->add_option("--guard", sim.guard, "Exact-mode assignment limit");
    simulate->add_option("--max-k", sim.max_set_size, "Largest class size searched in pruned mode");
    simulate->add_option("--workers", sim.workers);
    simulate->add_option("--out", out_path);

    // limit-cdf
    std::size_t law_samples = 100000;
    std::string grid_text = "-5:15:201";
    std::uint64_t seed = kLawSeed;
    bool unit_scale = false;
    auto* limit_cdf = app.add_subcommand("limit-cdf", "Monte Carlo CDF table of the limit law");
    limit_cdf->add_option("pattern", pattern_ref)->required();
    limit_cdf->add_option("--p", p)->required();
    limit_cdf->add_option("--samples", law_samples);
    limit_cdf->add_option("--grid", grid_text, "lo:hi:count");
    limit_cdf->add_option("--seed", seed);
    limit_cdf->add_flag("--unit-scale", unit_scale, "Divide out the class coefficient (one class size only)");
    limit_cdf->add_option("--out", out_path);

    // gof
    std::string samples_file;
    std::string law = "gumbel";
    std::string column = "normalized";
    auto* gof = app.add_subcommand("gof", "Kolmogorov-Smirnov distance of a sample to a law");
    gof->add_option("--samples-file", samples_file)->required();
    gof->add_option("--law", law, "gumbel | mthmax:m | pattern:p | m2");
    gof->add_option("--pattern", pattern_ref, "Pattern for law pattern:p");
    gof->add_option("--column", column);
    gof->add_option("--seed", seed, "Seed of the Monte Carlo law evaluator");

    // joint-maxima
    JointMaximaConfig joint;
    std::string spec_text;
    auto* joint_cmd = app.add_subcommand("joint-maxima", "Top-m common neighbourhoods of k-sets");
    joint_cmd->add_option("--spec", spec_text, "k:m[,k:m...]")->required();
    joint_cmd->add_option("--n", joint.n)->required();
    joint_cmd->add_option("--p", joint.p)->required();
    joint_cmd->add_option("--samples", joint.samples)->required();
    joint_cmd->add_option("--seed", joint.master_seed)->required();
    joint_cmd->add_option("--workers", joint.workers);
    joint_cmd->add_option("--max-k", joint.max_set_size, "Largest set size searched");
    joint_cmd->add_option("--out", out_path);

    // deviate
    DeviationConfig dev;
    auto* deviate = app.add_subcommand("deviate", "Deviation of X(T) from its conditional estimate");
    deviate->add_option("pattern", dev.pattern_ref)->required();
    deviate->add_option("--n", dev.n)->required();
    deviate->add_option("--p", dev.p)->required();
    deviate->add_option("--samples", dev.samples)->required();
    deviate->add_option("--tuples", dev.tuples)->required();
    deviate->add_option("--eps", dev.eps)->required()->delimiter(',');
    deviate->add_option("--seed", dev.master_seed);
    deviate->add_option("--workers", dev.workers);
    deviate->add_option("--out", out_path);

    // demo
    std::string demo_name;
    std::size_t demo_workers = 0;
    auto* demo = app.add_subcommand("demo", "Run a named desk-scale configuration");
    demo->add_option("name", demo_name)
        ->required()
        ->check(CLI::IsMember({"demo-maxdeg", "demo-k2", "demo-bijective2", "demo-path4"}));
    demo->add_option("--workers", demo_workers);
    demo->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*classify) {
            const auto pattern = resolve_pattern_ref(pattern_ref);
            auto doc = decomposition_json(classify_symmetric(pattern));
            doc["pattern"] = nlohmann::json::parse(serialize_pattern(pattern));
            std::cout << doc.dump(2) << '\n';
        } else if (*constants) {
            const auto d = classify_symmetric(resolve_pattern_ref(pattern_ref));
            const auto c = scaling_constants(d, n_real, p);
            std::cout << "a_n," << format_real(c.a_n) << "\nb_n," << format_real(c.b_n) << '\n';
        } else if (*simulate) {
            sim.mode = parse_mode(mode_text);
            const auto records = run_experiment(sim);
            emit(out_path, [&](std::ostream& o) { write_records_csv(o, records); });
        } else if (*limit_cdf) {
            const auto d = classify_symmetric(resolve_pattern_ref(pattern_ref));
            const auto grid = parse_grid(grid_text);
            Rng rng(seed);
            const auto table = limit_cdf_mc(LimitLawSpec::from_decomposition(d, p, unit_scale), law_samples, grid, rng);
            emit(out_path, [&](std::ostream& o) { write_cdf_csv(o, table); });
        } else if (*gof) {
            std::ifstream in(samples_file);
            if (!in) throw std::invalid_argument("cannot read '" + samples_file + "'");
            print_fit(read_sample_column(in, column), law_cdf(law, pattern_ref, seed));
        } else if (*joint_cmd) {
            joint.spec = parse_joint_spec(spec_text);
            const auto rows = joint_maxima_experiment(joint);
            emit(out_path, [&](std::ostream& o) { write_joint_maxima_csv(o, joint, rows); });
        } else if (*deviate) {
            const auto result = deviation_experiment(dev);
            emit(out_path, [&](std::ostream& o) { write_deviation_csv(o, result); });
        } else if (*demo) {
            if (demo_name == "demo-maxdeg" || demo_name == "demo-bijective2") {
                ExperimentConfig cfg = demo_name == "demo-maxdeg" ? demo_maxdeg_config(demo_workers)
                                                                  : demo_bijective2_config(demo_workers);
                const auto records = run_experiment(cfg);
                emit(out_path, [&](std::ostream& o) { write_records_csv(o, records); });
                std::vector<double> xi;
                for (const auto& r : records) xi.push_back(r.normalized);
                std::cerr << "ks vs limit law: "
                          << format_real(ks_distance(EmpiricalDistribution(xi),
                                                     law_cdf("pattern:0.5", cfg.pattern_ref, kLawSeed)))
                          << '\n';
            } else if (demo_name == "demo-k2") {
                joint = demo_k2_config(demo_workers);
                const auto rows = joint_maxima_experiment(joint);
                emit(out_path, [&](std::ostream& o) { write_joint_maxima_csv(o, joint, rows); });
            } else {
                dev = demo_path4_config(demo_workers);
                const auto result = deviation_experiment(dev);
                emit(out_path, [&](std::ostream& o) { write_deviation_csv(o, result); });
            }
        }
    } catch (const GuardError& e) {
        std::cerr << "guard violation: " << e.what() << '\n';
        return kExitGuard;
    } catch (const PatternError& e) {
        std::cerr << "pattern error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const OutputError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
