#pragma once

// Config-driven experiment runners. Every runner returns a flat table whose
// rows are (kind, parameters..., replicate, metric, value); replicates are
// independent PRNG streams so tables are identical for any thread count.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gipmax/generators.hpp"
#include "gipmax/graph.hpp"
#include "gipmax/influence_max.hpp"

namespace gipmax::exp {

enum class Kind {
    Propagate,
    SbmEffects,
    Coexistence,
    ImAccuracyGrid,
    ImBudgetSweep,
    MethodCompare,
    BudgetSaturation,
    RuntimeSweep,
};

Kind kind_from_string(const std::string& s);
std::string to_string(Kind k);

struct NetworkSpec {
    enum class Type { Sbm, Er, Lattice, Composite, EdgeList };
    Type type = Type::Sbm;
    SbmConfig sbm;
    CompositeConfig composite;
    std::size_t n = 50;         // er / lattice
    double p = 0.1;             // er
    std::size_t degree = 4;     // lattice
    double weight = 0.1;        // er / lattice
    std::string path;           // edge list
    bool bidirectional = false; // edge list
    double default_weight = 0.1;

    bool is_random() const { return type != Type::Lattice && type != Type::EdgeList; }
};

struct ModelSpec {
    bool linear = false; // EIC-limit dynamics instead of threshold bounds
    std::vector<double> theta_l{1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0};
    /// Explicit theta_h values; cells keep theta_h >= theta_l. When empty,
    /// each theta_l is paired with itself and the integers above it up to
    /// theta_h_max.
    std::vector<double> theta_h;
    double theta_h_max = 16.0;
    double gamma = 0.0;
    double eps = 1e-10;
    std::size_t t_max = 10000;
    double l0 = 1.0;
    double h0 = 1.0;

    std::vector<std::pair<double, double>> cells() const;
};

struct ExperimentConfig {
    Kind kind = Kind::Propagate;
    NetworkSpec network;
    ModelSpec model;
    std::vector<SeedSet> seed_sets;
    std::vector<std::size_t> budgets{4};
    std::size_t samples = 100;
    std::size_t full_samples = 1000;
    std::uint64_t seed = 1;
    std::size_t horizon = 30;             // series length for s(t), n_a(t)
    std::vector<std::string> methods{"cds", "random", "degree", "katz"};
    CdsParams cds;
    bool community_restart = false;
    std::size_t random_draws = 100;       // n_s
    std::size_t random_repeats = 10;      // n_r
    std::vector<std::size_t> sizes{50, 100, 200};    // runtime sweep
    std::vector<double> mean_degrees{4.0, 8.0};      // runtime sweep
    std::size_t brute_cap = 10'000'000;

    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct RunOptions {
    std::size_t threads = 1;
    bool full_scale = false;
};

struct ResultRow {
    std::vector<std::string> params; // aligned with ResultTable::param_names
    std::string replicate;
    std::string metric;
    double value = 0.0;
};

struct ResultTable {
    Kind kind = Kind::Propagate;
    std::vector<std::string> param_names;
    std::vector<ResultRow> rows;
    std::size_t nonconverged = 0; // replicates that hit t_max

    void write_csv(std::ostream& out) const;
    /// Mean, standard deviation, standard error and count per
    /// (params, metric), over all replicates.
    void write_summary_csv(std::ostream& out) const;
    /// Rows matching every given parameter value.
    std::vector<double> values(const std::string& metric,
                               const std::map<std::string, std::string>& where = {}) const;
};

struct Stats {
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};
Stats summarize(const std::vector<double>& v);

/// Graph instance `replicate` of the spec; random types seed the generator
/// with a stream derived from (base, replicate).
Graph build_network(const NetworkSpec& spec, std::uint64_t base, std::size_t replicate);

/// Block labels when the network has planted communities.
std::optional<std::vector<int>> network_blocks(const NetworkSpec& spec);

/// Number formatting used in every table (shortest round-trip form).
std::string format_number(double v);
std::string format_seeds(const SeedSet& s);

ResultTable run_propagate(const ExperimentConfig& cfg, const RunOptions& opt);
ResultTable run_sbm_effects(const ExperimentConfig& cfg, const RunOptions& opt);
ResultTable run_coexistence(const ExperimentConfig& cfg, const RunOptions& opt);
ResultTable run_im_accuracy_grid(const ExperimentConfig& cfg, const RunOptions& opt);
ResultTable run_im_budget_sweep(const ExperimentConfig& cfg, const RunOptions& opt);
ResultTable run_method_compare(const ExperimentConfig& cfg, const RunOptions& opt);
ResultTable run_budget_saturation(const ExperimentConfig& cfg, const RunOptions& opt);
ResultTable run_runtime_sweep(const ExperimentConfig& cfg, const RunOptions& opt);

ResultTable run_experiment(const ExperimentConfig& cfg, const RunOptions& opt);

} // namespace gipmax::exp
