// gipmax command-line tool: generate | propagate | centrality | maximize | experiment.
// Exit codes: 0 success, 2 validation or parse error, 3 non-convergence.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiments.hpp"
#include "gipmax/centrality.hpp"
#include "gipmax/edge_list.hpp"
#include "gipmax/error.hpp"
#include "gipmax/generators.hpp"
#include "gipmax/influence_max.hpp"
#include "gipmax/parallel.hpp"
#include "gipmax/propagation.hpp"

namespace {

using namespace gipmax;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNonConvergent = 3;

struct GraphOptions {
    std::string path;
    bool bidirectional = false;
    double default_weight = 1.0;

    void add_to(CLI::App& app) {
        app.add_option("--graph", path, "Edge list file (src dst [weight])")->required();
        app.add_flag("--bidirectional", bidirectional, "Add the reverse of every edge");
        app.add_option("--default-weight", default_weight, "Weight for lines without one");
    }
    Graph load() const { return load_edge_list_file(path, {default_weight, bidirectional}); }
};

struct ModelOptions {
    std::string model = "threshold";
    double theta_l = 1.0;
    double theta_h = 1.0;
    double gamma = 0.0;
    double eps = 1e-10;
    std::size_t t_max = 10000;
    double l0 = 1.0;
    double h0 = 1.0;

    void add_to(CLI::App& app) {
        app.add_option("--model", model, "threshold or eic")
            ->check(CLI::IsMember({"threshold", "eic"}));
        app.add_option("--theta-l", theta_l, "Lower-bound growth factor");
        app.add_option("--theta-h", theta_h, "Upper-bound growth factor");
        app.add_option("--gamma", gamma, "Discount factor in [0, 1)");
        app.add_option("--eps", eps, "Convergence tolerance");
        app.add_option("--t-max", t_max, "Step limit");
        app.add_option("--l0", l0, "Initial lower bound");
        app.add_option("--h0", h0, "Initial upper bound");
    }
    bool linear() const { return model == "eic"; }
};

/// Accepts node labels when the graph carries them, indices otherwise.
NodeId resolve_node(const Graph& g, const std::string& token) {
    if (g.has_labels()) {
        const auto& labels = g.labels();
        for (NodeId i = 0; i < labels.size(); ++i)
            if (labels[i] == token) return i;
        fail(ErrorCode::InvalidArgument, "unknown node label '" + token + "'");
    }
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(token, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != token.size() || v >= g.node_count())
        fail(ErrorCode::InvalidArgument, "invalid node '" + token + "'");
    return static_cast<NodeId>(v);
}

json labelled(const Graph& g, const SeedSet& seeds) {
    json out = json::array();
    for (NodeId j : seeds) out.push_back(g.label(j));
    return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) fail(ErrorCode::InvalidArgument, "cannot write " + path);
    return file;
}

// ---- generate ---------------------------------------------------------------

struct GenerateCmd {
    std::string type = "sbm";
    std::string out;
    std::uint64_t seed = 0;
    SbmConfig sbm;
    CompositeConfig composite;
    std::size_t n = 50;
    double p = 0.1;
    std::size_t degree = 4;
    double weight = 0.1;

    void add_to(CLI::App& app) {
        app.add_option("--type", type, "sbm, er, lattice or composite")
            ->check(CLI::IsMember({"sbm", "er", "lattice", "composite"}));
        app.add_option("--out", out, "Output edge list (default stdout)");
        app.add_option("--seed", seed, "PRNG seed");
        app.add_option("--n1", sbm.n1, "SBM block 1 size");
        app.add_option("--n2", sbm.n2, "SBM block 2 size");
        app.add_option("--p1", sbm.p1, "SBM within-block probability, block 1");
        app.add_option("--p2", sbm.p2, "SBM within-block probability, block 2");
        app.add_option("--p12", sbm.p12, "SBM between-block probability");
        app.add_option("--n", n, "ER / lattice size");
        app.add_option("--p", p, "ER edge probability");
        app.add_option("--degree", degree, "Lattice degree (even)");
        app.add_option("--lattice-size", composite.lattice_size, "Composite: nodes per side");
        app.add_option("--lattice-degree", composite.lattice_degree, "Composite: lattice degree");
        app.add_option("--er-prob", composite.er_prob, "Composite: ER probability (<0: d/n)");
        app.add_option("--bridge-prob", composite.bridge_prob, "Composite: bridge probability");
        app.add_option("--weight", weight, "Edge weight");
    }

    int run() {
        Graph g;
        if (type == "sbm") {
            sbm.weight = weight;
            sbm.seed = seed;
            sbm.validate();
            g = generate_sbm(sbm);
        } else if (type == "er") {
            g = generate_er(n, p, weight, seed);
        } else if (type == "lattice") {
            g = generate_lattice(n, degree, weight);
        } else {
            composite.weight = weight;
            composite.seed = seed;
            composite.validate();
            g = generate_composite(composite);
        }
        std::ofstream file;
        write_edge_list(open_output(out, file), g);
        return 0;
    }
};

// ---- propagate --------------------------------------------------------------

struct PropagateCmd {
    GraphOptions graph;
    ModelOptions model;
    std::vector<std::string> seeds;
    std::string trajectory;
    bool per_node = false;

    void add_to(CLI::App& app) {
        graph.add_to(app);
        model.add_to(app);
        app.add_option("--seeds", seeds, "Seed nodes, set to h0 at t = 0")->required();
        app.add_option("--trajectory", trajectory, "Write t,node,x rows to this CSV");
        app.add_flag("--per-node", per_node, "Include per-node influence in the summary");
    }

    int run() {
        const Graph g = graph.load();
        StateVector x0(g.node_count(), 0.0);
        for (const auto& s : seeds) x0[resolve_node(g, s)] = model.h0;
        const auto schedule =
            model.linear() ? BoundSchedule::eic_limit()
                           : BoundSchedule::threshold(model.theta_l, model.theta_h, mean_weight(g),
                                                      model.l0, model.h0);
        const PropagationConfig cfg{model.gamma, model.eps, model.t_max, !trajectory.empty()};
        const auto res = evaluate_influence(g, schedule, cfg, x0);

        if (!trajectory.empty()) {
            std::ofstream file;
            auto& out = open_output(trajectory, file);
            out << "t,node,x\n";
            for (const auto& step : res.trajectory)
                for (const auto& [j, x] : step.entries)
                    out << step.t << ',' << g.label(j) << ',' << exp::format_number(x) << '\n';
        }
        json summary{{"total", res.total}, {"steps", res.steps}, {"converged", res.converged}};
        if (per_node) {
            json nodes = json::object();
            for (NodeId j = 0; j < g.node_count(); ++j) nodes[g.label(j)] = res.per_node[j];
            summary["per_node"] = std::move(nodes);
        }
        std::cout << summary.dump(2) << '\n';
        return res.converged ? 0 : kExitNonConvergent;
    }
};

// ---- centrality -------------------------------------------------------------

struct CentralityCmd {
    GraphOptions graph;
    std::string kind = "katz";
    double gamma = 0.0;
    std::optional<double> factor;
    std::string out;

    void add_to(CLI::App& app) {
        graph.add_to(app);
        app.add_option("--kind", kind, "katz or degree")->check(CLI::IsMember({"katz", "degree"}));
        app.add_option("--gamma", gamma, "Discount; Katz factor defaults to 1 - gamma");
        app.add_option("--factor", factor, "Explicit Katz factor");
        app.add_option("--out", out, "Output CSV (default stdout)");
    }

    int run() {
        const Graph g = graph.load();
        const auto c = kind == "degree"
                           ? degree_centrality(g)
                           : katz_centrality(g, factor ? *factor : ranking_katz_factor(g, gamma));
        std::ofstream file;
        auto& os = open_output(out, file);
        os << "node,score\n";
        for (NodeId j = 0; j < g.node_count(); ++j)
            os << g.label(j) << ',' << exp::format_number(c.values[j]) << '\n';
        return 0;
    }
};

// ---- maximize ---------------------------------------------------------------

struct MaximizeCmd {
    GraphOptions graph;
    ModelOptions model;
    std::string method = "cds";
    std::size_t k = 1;
    CdsParams cds;
    std::string restart = "none";
    std::string blocks_path;
    std::size_t draws = 100;
    std::size_t brute_cap = 10'000'000;
    std::size_t threads = default_thread_count();
    std::uint64_t seed = 0;

    void add_to(CLI::App& app) {
        graph.add_to(app);
        model.add_to(app);
        app.add_option("--method", method, "cds, brute, random, degree or katz")
            ->check(CLI::IsMember({"cds", "brute", "random", "degree", "katz"}));
        app.add_option("--k", k, "Budget")->required();
        app.add_option("--zeta", cds.zeta, "CDS sufficient-improvement factor");
        app.add_option("--delta", cds.delta, "CDS zeta decay");
        app.add_option("--radius", cds.radius, "CDS neighbourhood radius d");
        app.add_option("--restart", restart, "none or community")
            ->check(CLI::IsMember({"none", "community"}));
        app.add_option("--blocks", blocks_path,
                       "Community label file (one `node block` pair per line) for --restart community");
        app.add_option("--draws", draws, "Random method: number of sampled sets");
        app.add_option("--brute-cap", brute_cap, "Brute force: maximum C(n, k)");
        app.add_option("--threads", threads, "Brute force worker threads");
        app.add_option("--seed", seed, "PRNG seed for the random method");
    }

    std::vector<int> read_blocks(const Graph& g) const {
        if (blocks_path.empty())
            fail(ErrorCode::InvalidArgument, "--restart community needs --blocks");
        std::ifstream in(blocks_path);
        if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + blocks_path);
        std::vector<int> blocks(g.node_count(), -1);
        std::string node;
        int block = 0;
        while (in >> node >> block) blocks[resolve_node(g, node)] = block;
        for (int b : blocks)
            if (b < 0) fail(ErrorCode::InvalidArgument, "block file misses a node");
        return blocks;
    }

    int run() {
        auto g = std::make_shared<const Graph>(graph.load());
        ImProblem p = model.linear()
                          ? ImProblem::eic(g, k, model.gamma, model.l0, model.h0)
                          : ImProblem::threshold(g, model.theta_l, model.theta_h, k, model.gamma,
                                                 model.l0, model.h0);
        p.eps = model.eps;
        p.t_max = model.t_max;

        SolverOutcome out;
        if (method == "cds") {
            if (restart == "community") cds.community = read_blocks(*g);
            out = cds_solve(p, cds);
        } else if (method == "brute") {
            const auto start = std::chrono::steady_clock::now();
            const auto table = brute_force(p, brute_cap, threads);
            out.method = "brute";
            out.seed_set = table.entries.front().seeds;
            out.objective = table.best();
            out.n_evals = table.size();
            out.elapsed_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        } else if (method == "random") {
            out = random_sampling(p, draws, seed);
        } else {
            out = centrality_method(p, method == "degree" ? CentralityKind::Degree : CentralityKind::Katz);
        }
        const json result{{"method", out.method},
                          {"seed_set", labelled(*g, out.seed_set)},
                          {"objective", out.objective},
                          {"n_evals", out.n_evals},
                          {"elapsed", out.elapsed_seconds},
                          {"converged", out.converged}};
        std::cout << result.dump(2) << '\n';
        return out.converged ? 0 : kExitNonConvergent;
    }
};

// ---- experiment -------------------------------------------------------------

struct ExperimentCmd {
    std::string config;
    std::string out_dir = ".";
    bool full_scale = false;
    std::size_t threads = default_thread_count();
    bool allow_partial = false;
    bool gnuplot_stub = false;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::vector<std::size_t> k;
    std::vector<double> theta_l, theta_h;
    std::optional<double> gamma;

    void add_to(CLI::App& app) {
        app.add_option("--config", config, "Experiment JSON document")->required();
        app.add_option("--out", out_dir, "Output directory");
        app.add_flag("--full-scale,--paper-scale", full_scale, "Use the full-scale sample count");
        app.add_option("--threads", threads, "Worker threads (default: GIPMAX_THREADS or all cores)");
        app.add_flag("--allow-partial", allow_partial, "Exit 0 even if some replicate hit t_max");
        app.add_flag("--gnuplot-stub", gnuplot_stub, "Also write a whitespace-separated .dat summary");
        app.add_option("--samples", samples, "Override the sample count");
        app.add_option("--seed", seed, "Override the base PRNG seed");
        app.add_option("--k", k, "Override the budget list");
        app.add_option("--theta-l", theta_l, "Override the theta_l grid");
        app.add_option("--theta-h", theta_h, "Override the theta_h grid");
        app.add_option("--gamma", gamma, "Override gamma");
    }

    int run() {
        std::ifstream in(config);
        if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + config);
        json j = json::parse(in);
        // Edge-list paths in a config are relative to the config file.
        if (j.contains("network") && j["network"].contains("path")) {
            const std::filesystem::path rel = j["network"]["path"].get<std::string>();
            if (rel.is_relative())
                j["network"]["path"] = (std::filesystem::path(config).parent_path() / rel).string();
        }
        if (samples) j[full_scale ? "full_samples" : "samples"] = *samples;
        if (seed) j["seed"] = *seed;
        if (!k.empty()) j["k"] = k;
        if (!theta_l.empty()) j["model"]["theta_l"] = theta_l;
        if (!theta_h.empty()) j["model"]["theta_h"] = theta_h;
        if (gamma) j["model"]["gamma"] = *gamma;

        const auto cfg = exp::ExperimentConfig::from_json(j);
        const auto table = exp::run_experiment(cfg, {std::max<std::size_t>(threads, 1), full_scale});

        std::filesystem::create_directories(out_dir);
        const std::string stem = (std::filesystem::path(out_dir) / exp::to_string(cfg.kind)).string();
        {
            std::ofstream f(stem + ".csv");
            table.write_csv(f);
        }
        {
            std::ofstream f(stem + "_summary.csv");
            table.write_summary_csv(f);
        }
        if (gnuplot_stub) write_gnuplot(table, stem + ".dat");
        const json meta{{"kind", exp::to_string(cfg.kind)},
                        {"rows", table.rows.size()},
                        {"nonconverged", table.nonconverged},
                        {"full_scale", full_scale},
                        {"config", j}};
        std::ofstream(stem + ".json") << meta.dump(2) << '\n';
        std::cout << meta["kind"].get<std::string>() << ": " << table.rows.size() << " rows, "
                  << table.nonconverged << " non-converged -> " << stem << ".csv\n";
        return table.nonconverged > 0 && !allow_partial ? kExitNonConvergent : 0;
    }

    /// One block per metric (separated by two blank lines for gnuplot's
    /// `index`), columns: params..., n, mean, sd, se.
    static void write_gnuplot(const exp::ResultTable& table, const std::string& path) {
        std::ostringstream csv;
        table.write_summary_csv(csv);
        std::istringstream lines(csv.str());
        std::string header;
        std::getline(lines, header);
        const std::size_t metric_col = table.param_names.size() + 1;
        std::map<std::string, std::vector<std::vector<std::string>>> by_metric;
        std::vector<std::string> order;
        for (std::string line; std::getline(lines, line);) {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            for (std::string c; std::getline(ss, c, ',');) cells.push_back(c.empty() ? "-" : c);
            const std::string metric = cells[metric_col];
            if (!by_metric.count(metric)) order.push_back(metric);
            cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(metric_col));
            cells.erase(cells.begin());
            by_metric[metric].push_back(std::move(cells));
        }
        std::ofstream out(path);
        for (const auto& metric : order) {
            out << "# metric " << metric << "\n#";
            for (const auto& p : table.param_names) out << ' ' << p;
            out << " n mean sd se\n";
            for (const auto& row : by_metric[metric]) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
                out << '\n';
            }
            out << "\n\n";
        }
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gipmax: information propagation and influence maximization"};
    app.require_subcommand(1);

    GenerateCmd generate;
    PropagateCmd propagate;
    CentralityCmd centrality;
    MaximizeCmd maximize;
    ExperimentCmd experiment;
    auto* gen_app = app.add_subcommand("generate", "Write a synthetic network as an edge list");
    auto* prop_app = app.add_subcommand("propagate", "Run the propagation model from a seed set");
    auto* cent_app = app.add_subcommand("centrality", "Katz or degree centrality per node");
    auto* max_app = app.add_subcommand("maximize", "Select a budget-k seed set");
    auto* exp_app = app.add_subcommand("experiment", "Run a config-driven experiment");
    generate.add_to(*gen_app);
    propagate.add_to(*prop_app);
    centrality.add_to(*cent_app);
    maximize.add_to(*max_app);
    experiment.add_to(*exp_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*gen_app) return generate.run();
        if (*prop_app) return propagate.run();
        if (*cent_app) return centrality.run();
        if (*max_app) return maximize.run();
        return experiment.run();
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return e.is_validation() ? kExitValidation : kExitNonConvergent;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
