#include "experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>

#include "gipmax/centrality.hpp"
#include "gipmax/edge_list.hpp"
#include "gipmax/error.hpp"
#include "gipmax/parallel.hpp"
#include "gipmax/propagation.hpp"
#include "gipmax/rng.hpp"

namespace gipmax::exp {
namespace {

using nlohmann::json;

const std::vector<std::pair<Kind, std::string>> kKindNames{
    {Kind::Propagate, "propagate"},
    {Kind::SbmEffects, "sbm-effects"},
    {Kind::Coexistence, "coexistence"},
    {Kind::ImAccuracyGrid, "im-accuracy-grid"},
    {Kind::ImBudgetSweep, "im-budget-sweep"},
    {Kind::MethodCompare, "method-compare"},
    {Kind::BudgetSaturation, "budget-saturation"},
    {Kind::RuntimeSweep, "runtime-sweep"},
};

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

/// A scalar or an array of numbers.
void read_grid(const json& j, const char* key, std::vector<double>& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    out = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
}

NetworkSpec parse_network(const json& j) {
    NetworkSpec s;
    const std::string type = j.value("type", "sbm");
    if (type == "sbm") {
        s.type = NetworkSpec::Type::Sbm;
        read(j, "n1", s.sbm.n1);
        read(j, "n2", s.sbm.n2);
        read(j, "p1", s.sbm.p1);
        read(j, "p2", s.sbm.p2);
        read(j, "p12", s.sbm.p12);
        read(j, "weight", s.sbm.weight);
        s.sbm.validate();
    } else if (type == "er") {
        s.type = NetworkSpec::Type::Er;
        read(j, "n", s.n);
        read(j, "p", s.p);
        read(j, "weight", s.weight);
    } else if (type == "lattice") {
        s.type = NetworkSpec::Type::Lattice;
        read(j, "n", s.n);
        read(j, "degree", s.degree);
        read(j, "weight", s.weight);
    } else if (type == "composite") {
        s.type = NetworkSpec::Type::Composite;
        read(j, "lattice_size", s.composite.lattice_size);
        read(j, "lattice_degree", s.composite.lattice_degree);
        read(j, "er_prob", s.composite.er_prob);
        read(j, "bridge_prob", s.composite.bridge_prob);
        read(j, "weight", s.composite.weight);
        s.composite.validate();
    } else if (type == "edge_list") {
        s.type = NetworkSpec::Type::EdgeList;
        read(j, "path", s.path);
        read(j, "bidirectional", s.bidirectional);
        read(j, "default_weight", s.default_weight);
        if (s.path.empty()) fail(ErrorCode::InvalidArgument, "edge_list network needs a path");
    } else {
        fail(ErrorCode::InvalidArgument, "unknown network type '" + type + "'");
    }
    return s;
}

std::string fmt(double v) { return format_number(v); }

struct Cell {
    std::string theta_l, theta_h;
    double tl = 0.0, th = 0.0;
};

std::vector<Cell> model_cells(const ModelSpec& m) {
    if (m.linear) return {Cell{"eic", "eic"}};
    std::vector<Cell> out;
    for (auto [l, h] : m.cells()) out.push_back({fmt(l), fmt(h), l, h});
    return out;
}

ImProblem make_problem(const ModelSpec& m, std::shared_ptr<const Graph> g, const Cell& c,
                       std::size_t k) {
    ImProblem p = m.linear ? ImProblem::eic(std::move(g), k, m.gamma, m.l0, m.h0)
                           : ImProblem::threshold(std::move(g), c.tl, c.th, k, m.gamma, m.l0, m.h0);
    p.eps = m.eps;
    p.t_max = m.t_max;
    return p;
}

std::size_t replicate_count(const ExperimentConfig& cfg, const RunOptions& opt) {
    if (!cfg.network.is_random()) return 1;
    return opt.full_scale ? cfg.full_samples : cfg.samples;
}

/// Runs task(i, rows) for i in [0, count) on opt.threads workers and
/// concatenates the per-task rows in index order.
template <class Task>
void run_tasks(std::size_t count, const RunOptions& opt, ResultTable& table, Task task) {
    std::vector<std::vector<ResultRow>> parts(count);
    std::vector<std::size_t> partial(count, 0);
    parallel_for(count, opt.threads, [&](std::size_t i) { partial[i] = task(i, parts[i]); });
    for (std::size_t i = 0; i < count; ++i) {
        table.nonconverged += partial[i];
        for (auto& r : parts[i]) table.rows.push_back(std::move(r));
    }
}

std::vector<double> initial_state(std::size_t n, const SeedSet& seeds, double h0) {
    std::vector<double> x(n, 0.0);
    for (NodeId j : seeds) {
        if (j >= n) fail(ErrorCode::InvalidArgument, "seed " + std::to_string(j) + " out of range");
        x[j] = h0;
    }
    return x;
}

BoundSchedule schedule_for(const ModelSpec& m, const Graph& g, const Cell& c) {
    if (m.linear) return BoundSchedule::eic_limit();
    return BoundSchedule::threshold(c.tl, c.th, mean_weight(g), m.l0, m.h0);
}

PropagationConfig propagation_for(const ModelSpec& m) {
    return PropagationConfig{m.gamma, m.eps, m.t_max, false};
}

/// Value of a series at t, holding the last value once propagation stopped.
template <class T>
double at_or_last(const std::vector<T>& series, std::size_t t) {
    return static_cast<double>(series[std::min(t, series.size() - 1)]);
}

ResultTable make_table(Kind kind, std::vector<std::string> params) {
    ResultTable t;
    t.kind = kind;
    t.param_names = std::move(params);
    return t;
}

/// s(t) / n_a(t) style runs shared by propagate, sbm-effects and coexistence.
ResultTable run_series(const ExperimentConfig& cfg, const RunOptions& opt, Kind kind,
                       std::vector<SeedSet> seed_sets, bool pair_ratios) {
    if (seed_sets.empty()) fail(ErrorCode::InvalidArgument, "experiment needs seed sets");
    auto table = make_table(kind, {"theta_l", "theta_h", "seed_set", "t"});
    const auto cells = model_cells(cfg.model);
    const std::size_t reps = replicate_count(cfg, opt);

    run_tasks(reps, opt, table, [&](std::size_t rep, std::vector<ResultRow>& rows) {
        const Graph g = build_network(cfg.network, cfg.seed, rep);
        const std::string r = std::to_string(rep);
        std::size_t partial = 0;
        for (const auto& c : cells) {
            const auto schedule = schedule_for(cfg.model, g, c);
            std::vector<double> totals;
            for (const auto& seeds : seed_sets) {
                const auto x0 = initial_state(g.node_count(), seeds, cfg.model.h0);
                const auto res = evaluate_influence(g, schedule, propagation_for(cfg.model), x0);
                if (!res.converged) ++partial;
                const std::string s = format_seeds(seeds);
                auto emit = [&](std::string t, std::string metric, double v) {
                    rows.push_back({{c.theta_l, c.theta_h, s, std::move(t)}, r, std::move(metric), v});
                };
                emit("", "total", res.total);
                emit("", "steps", static_cast<double>(res.steps));
                emit("", "converged", res.converged ? 1.0 : 0.0);
                const double step1 = res.s_of_t.size() > 1 ? res.s_of_t[1] - res.s_of_t[0] : 0.0;
                emit("", "step1", step1);
                for (std::size_t t = 0; t <= cfg.horizon; ++t) {
                    emit(std::to_string(t), "s", at_or_last(res.s_of_t, t));
                    emit(std::to_string(t), "n_a", at_or_last(res.n_a_of_t, t));
                }
                totals.push_back(res.total);
            }
            if (!pair_ratios) continue;
            for (std::size_t i = 0; i + 1 < seed_sets.size(); i += 2) {
                if (totals[i + 1] == 0.0) continue;
                rows.push_back({{c.theta_l, c.theta_h,
                                 format_seeds(seed_sets[i]) + "/" + format_seeds(seed_sets[i + 1]), ""},
                                r, "delta", totals[i] / totals[i + 1]});
            }
        }
        return partial;
    });
    return table;
}

std::optional<CdsParams> cds_params_for(const ExperimentConfig& cfg) {
    CdsParams p = cfg.cds;
    if (cfg.community_restart) {
        auto blocks = network_blocks(cfg.network);
        if (!blocks) fail(ErrorCode::InvalidArgument, "community restart needs planted blocks");
        p.community = std::move(blocks);
    }
    return p;
}

} // namespace

Kind kind_from_string(const std::string& s) {
    for (const auto& [k, name] : kKindNames)
        if (name == s) return k;
    fail(ErrorCode::InvalidArgument, "unknown experiment kind '" + s + "'");
}

std::string to_string(Kind k) {
    for (const auto& [kind, name] : kKindNames)
        if (kind == k) return name;
    return "unknown";
}

std::vector<std::pair<double, double>> ModelSpec::cells() const {
    if (theta_l.empty()) fail(ErrorCode::InvalidArgument, "theta_l grid is empty");
    std::vector<std::pair<double, double>> out;
    for (double l : theta_l) {
        if (!theta_h.empty()) {
            for (double h : theta_h)
                if (h >= l) out.emplace_back(l, h);
            continue;
        }
        out.emplace_back(l, l);
        for (double h = std::floor(l) + 1.0; h <= theta_h_max; h += 1.0) out.emplace_back(l, h);
    }
    if (out.empty()) fail(ErrorCode::InvalidArgument, "theta grid has no cell with theta_h >= theta_l");
    return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    c.kind = kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("network")) c.network = parse_network(j.at("network"));
    if (j.contains("model")) {
        const auto& m = j.at("model");
        c.model.linear = m.value("type", std::string("threshold")) == "eic";
        read_grid(m, "theta_l", c.model.theta_l);
        read_grid(m, "theta_h", c.model.theta_h);
        read(m, "theta_h_max", c.model.theta_h_max);
        read(m, "gamma", c.model.gamma);
        read(m, "eps", c.model.eps);
        read(m, "t_max", c.model.t_max);
        read(m, "l0", c.model.l0);
        read(m, "h0", c.model.h0);
    }
    if (j.contains("seed_sets")) {
        for (const auto& s : j.at("seed_sets")) {
            auto seeds = s.get<SeedSet>();
            std::sort(seeds.begin(), seeds.end());
            c.seed_sets.push_back(std::move(seeds));
        }
    }
    if (j.contains("k")) {
        const auto& k = j.at("k");
        c.budgets = k.is_array() ? k.get<std::vector<std::size_t>>()
                                 : std::vector<std::size_t>{k.get<std::size_t>()};
    }
    read(j, "samples", c.samples);
    read(j, "full_samples", c.full_samples);
    read(j, "seed", c.seed);
    read(j, "horizon", c.horizon);
    read(j, "methods", c.methods);
    read(j, "random_draws", c.random_draws);
    read(j, "random_repeats", c.random_repeats);
    read(j, "sizes", c.sizes);
    read(j, "mean_degrees", c.mean_degrees);
    read(j, "brute_cap", c.brute_cap);
    if (j.contains("cds")) {
        const auto& d = j.at("cds");
        read(d, "zeta", c.cds.zeta);
        read(d, "delta", c.cds.delta);
        read(d, "radius", c.cds.radius);
        c.community_restart = d.value("restart", std::string("none")) == "community";
    }
    if (c.samples < 1 || c.full_samples < 1)
        fail(ErrorCode::InvalidArgument, "sample count must be at least 1");
    if (c.budgets.empty()) fail(ErrorCode::InvalidArgument, "budget list is empty");
    c.model.cells();
    c.cds.validate(0 /* community labels are attached later */);
    return c;
}

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string format_seeds(const SeedSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(s[i]);
    }
    return out;
}

Stats summarize(const std::vector<double>& v) {
    Stats s;
    s.n = v.size();
    if (v.empty()) return s;
    for (double x : v) s.mean += x;
    s.mean /= static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

Graph build_network(const NetworkSpec& spec, std::uint64_t base, std::size_t replicate) {
    const std::uint64_t seed = mix_seed(base ^ static_cast<std::uint64_t>(replicate));
    switch (spec.type) {
    case NetworkSpec::Type::Sbm: {
        SbmConfig c = spec.sbm;
        c.seed = seed;
        return generate_sbm(c);
    }
    case NetworkSpec::Type::Er:
        return generate_er(spec.n, spec.p, spec.weight, seed);
    case NetworkSpec::Type::Lattice:
        return generate_lattice(spec.n, spec.degree, spec.weight);
    case NetworkSpec::Type::Composite: {
        CompositeConfig c = spec.composite;
        c.seed = seed;
        return generate_composite(c);
    }
    case NetworkSpec::Type::EdgeList:
        return load_edge_list_file(spec.path, {spec.default_weight, spec.bidirectional});
    }
    fail(ErrorCode::InvalidArgument, "unknown network type");
}

std::optional<std::vector<int>> network_blocks(const NetworkSpec& spec) {
    if (spec.type == NetworkSpec::Type::Sbm) return sbm_blocks(spec.sbm);
    if (spec.type == NetworkSpec::Type::Composite) {
        std::vector<int> b(2 * spec.composite.lattice_size, 1);
        std::fill(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(spec.composite.lattice_size), 0);
        return b;
    }
    return std::nullopt;
}

void ResultTable::write_csv(std::ostream& out) const {
    out << "kind";
    for (const auto& p : param_names) out << ',' << p;
    out << ",replicate,metric,value\n";
    const std::string k = to_string(kind);
    for (const auto& r : rows) {
        out << k;
        for (const auto& p : r.params) out << ',' << p;
        out << ',' << r.replicate << ',' << r.metric << ',' << format_number(r.value) << '\n';
    }
}

void ResultTable::write_summary_csv(std::ostream& out) const {
    std::vector<std::pair<std::vector<std::string>, std::vector<double>>> groups;
    std::map<std::vector<std::string>, std::size_t> index;
    for (const auto& r : rows) {
        auto key = r.params;
        key.push_back(r.metric);
        auto [it, inserted] = index.try_emplace(key, groups.size());
        if (inserted) groups.push_back({key, {}});
        groups[it->second].second.push_back(r.value);
    }
    out << "kind";
    for (const auto& p : param_names) out << ',' << p;
    out << ",metric,n,mean,sd,se\n";
    const std::string k = to_string(kind);
    for (const auto& [key, vals] : groups) {
        const Stats s = summarize(vals);
        out << k;
        for (const auto& part : key) out << ',' << part;
        out << ',' << s.n << ',' << format_number(s.mean) << ',' << format_number(s.sd) << ','
            << format_number(s.se) << '\n';
    }
}

std::vector<double> ResultTable::values(const std::string& metric,
                                        const std::map<std::string, std::string>& where) const {
    std::vector<std::size_t> cols;
    std::vector<const std::string*> want;
    for (const auto& [name, value] : where) {
        auto it = std::find(param_names.begin(), param_names.end(), name);
        if (it == param_names.end()) fail(ErrorCode::InvalidArgument, "no column '" + name + "'");
        cols.push_back(static_cast<std::size_t>(it - param_names.begin()));
        want.push_back(&value);
    }
    std::vector<double> out;
    for (const auto& r : rows) {
        if (r.metric != metric) continue;
        bool match = true;
        for (std::size_t i = 0; i < cols.size() && match; ++i) match = r.params[cols[i]] == *want[i];
        if (match) out.push_back(r.value);
    }
    return out;
}

ResultTable run_propagate(const ExperimentConfig& cfg, const RunOptions& opt) {
    return run_series(cfg, opt, Kind::Propagate, cfg.seed_sets, false);
}

ResultTable run_sbm_effects(const ExperimentConfig& cfg, const RunOptions& opt) {
    auto seed_sets = cfg.seed_sets;
    if (seed_sets.empty()) {
        const auto b = static_cast<NodeId>(cfg.network.sbm.n1);
        seed_sets = {{0, 1}, {0, b}, {0, 1, 2, 3}, {0, 1, b, b + 1}};
    }
    return run_series(cfg, opt, Kind::SbmEffects, std::move(seed_sets), true);
}

ResultTable run_coexistence(const ExperimentConfig& cfg, const RunOptions& opt) {
    ExperimentConfig c = cfg;
    if (c.network.type != NetworkSpec::Type::Composite)
        fail(ErrorCode::InvalidArgument, "coexistence needs a composite network");
    if (c.seed_sets.empty()) {
        const auto n_o = static_cast<NodeId>(c.network.composite.lattice_size);
        c.seed_sets = {{0, 1, 2, 3}, {n_o, n_o + 1, n_o + 2, n_o + 3}};
    }
    return run_series(c, opt, Kind::Coexistence, c.seed_sets, false);
}

ResultTable run_im_accuracy_grid(const ExperimentConfig& cfg, const RunOptions& opt) {
    auto table = make_table(Kind::ImAccuracyGrid, {"theta_l", "theta_h", "k"});
    const auto cells = model_cells(cfg.model);
    const std::size_t reps = replicate_count(cfg, opt);
    const auto params = *cds_params_for(cfg);
    const std::size_t per_rep = cells.size() * cfg.budgets.size();

    std::vector<std::shared_ptr<const Graph>> graphs(reps);
    for (std::size_t r = 0; r < reps; ++r)
        graphs[r] = std::make_shared<const Graph>(build_network(cfg.network, cfg.seed, r));

    run_tasks(reps * per_rep, opt, table, [&](std::size_t task, std::vector<ResultRow>& rows) {
        const std::size_t rep = task / per_rep;
        const auto& c = cells[(task % per_rep) / cfg.budgets.size()];
        const std::size_t k = cfg.budgets[task % cfg.budgets.size()];
        const auto p = make_problem(cfg.model, graphs[rep], c, k);
        auto emit = [&](const char* metric, double v) {
            rows.push_back({{c.theta_l, c.theta_h, std::to_string(k)}, std::to_string(rep), metric, v});
        };
        RankingTable ranking;
        try {
            ranking = brute_force(p, cfg.brute_cap);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NonConvergent) throw;
            emit("nonconverged", 1.0);
            return std::size_t{1};
        }
        const auto out = cds_solve(p, params);
        const double phi = rank_metric(out.seed_set, ranking);
        emit("tau", accuracy(out.objective, ranking));
        emit("phi", phi);
        emit("rank", std::round(phi * static_cast<double>(ranking.size())));
        emit("cds_objective", out.objective);
        emit("best_objective", ranking.best());
        emit("n_evals", static_cast<double>(out.n_evals));
        emit("iterations", static_cast<double>(out.iterations));
        return out.converged ? std::size_t{0} : std::size_t{1};
    });
    return table;
}

ResultTable run_im_budget_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
    auto table = make_table(Kind::ImBudgetSweep, {"theta_l", "theta_h", "k"});
    const auto cells = model_cells(cfg.model);
    const std::size_t reps = replicate_count(cfg, opt);
    const auto params = *cds_params_for(cfg);

    run_tasks(reps, opt, table, [&](std::size_t rep, std::vector<ResultRow>& rows) {
        auto g = std::make_shared<const Graph>(build_network(cfg.network, cfg.seed, rep));
        std::size_t partial = 0;
        for (const auto& c : cells)
            for (std::size_t k : cfg.budgets) {
                const auto p = make_problem(cfg.model, g, c, k);
                auto emit = [&](const char* metric, double v) {
                    rows.push_back({{c.theta_l, c.theta_h, std::to_string(k)}, std::to_string(rep), metric, v});
                };
                const auto cds = cds_solve(p, params);
                const auto katz = centrality_method(p, CentralityKind::Katz);
                if (!cds.converged || !katz.converged) ++partial;
                emit("cds_objective", cds.objective);
                emit("katz_objective", katz.objective);
                emit("n_evals", static_cast<double>(cds.n_evals));
                if (binomial(g->node_count(), k) > cfg.brute_cap) continue;
                const auto ranking = brute_force(p, cfg.brute_cap);
                emit("best_objective", ranking.best());
                emit("tau_cds", accuracy(cds.objective, ranking));
                emit("tau_katz", accuracy(katz.objective, ranking));
            }
        return partial;
    });
    return table;
}

ResultTable run_method_compare(const ExperimentConfig& cfg, const RunOptions& opt) {
    auto table = make_table(Kind::MethodCompare, {"theta_l", "theta_h", "k", "method"});
    const auto cells = model_cells(cfg.model);
    const std::size_t reps = replicate_count(cfg, opt);
    const auto params = *cds_params_for(cfg);

    run_tasks(reps, opt, table, [&](std::size_t rep, std::vector<ResultRow>& rows) {
        auto g = std::make_shared<const Graph>(build_network(cfg.network, cfg.seed, rep));
        std::size_t partial = 0;
        for (const auto& c : cells)
            for (std::size_t k : cfg.budgets) {
                const auto p = make_problem(cfg.model, g, c, k);
                auto emit = [&](const std::string& method, const char* metric, double v) {
                    rows.push_back({{c.theta_l, c.theta_h, std::to_string(k), method},
                                    std::to_string(rep), metric, v});
                };
                for (const auto& m : cfg.methods) {
                    if (m == "random") {
                        std::vector<double> objs;
                        for (std::size_t r = 0; r < cfg.random_repeats; ++r) {
                            const std::uint64_t s =
                                mix_seed(cfg.seed ^ (static_cast<std::uint64_t>(rep) << 32) ^ r);
                            const auto out = random_sampling(p, cfg.random_draws, s);
                            if (!out.converged) ++partial;
                            objs.push_back(out.objective);
                        }
                        const Stats st = summarize(objs);
                        emit(m, "objective", st.mean);
                        emit(m, "objective_sd", st.sd);
                        continue;
                    }
                    SolverOutcome out;
                    if (m == "cds") out = cds_solve(p, params);
                    else if (m == "degree") out = centrality_method(p, CentralityKind::Degree);
                    else if (m == "katz") out = centrality_method(p, CentralityKind::Katz);
                    else fail(ErrorCode::InvalidArgument, "unknown method '" + m + "'");
                    if (!out.converged) ++partial;
                    emit(m, "objective", out.objective);
                    emit(m, "n_evals", static_cast<double>(out.n_evals));
                }
            }
        return partial;
    });
    return table;
}

ResultTable run_budget_saturation(const ExperimentConfig& cfg, const RunOptions& opt) {
    auto table = make_table(Kind::BudgetSaturation, {"theta_l", "theta_h", "k"});
    const auto cells = model_cells(cfg.model);
    const std::size_t reps = replicate_count(cfg, opt);

    run_tasks(reps * cells.size(), opt, table, [&](std::size_t task, std::vector<ResultRow>& rows) {
        const std::size_t rep = task / cells.size();
        const auto& c = cells[task % cells.size()];
        auto g = std::make_shared<const Graph>(build_network(cfg.network, cfg.seed, rep));
        const std::size_t n = g->node_count();
        std::vector<double> best(n + 1, 0.0);
        for (std::size_t k = 1; k <= n; ++k)
            best[k] = brute_force(make_problem(cfg.model, g, c, k), cfg.brute_cap).best();
        const double top = *std::max_element(best.begin(), best.end());
        for (std::size_t k = 1; k <= n; ++k) {
            const std::vector<std::string> key{c.theta_l, c.theta_h, std::to_string(k)};
            rows.push_back({key, std::to_string(rep), "best_objective", best[k]});
            rows.push_back({key, std::to_string(rep), "ratio", top > 0.0 ? best[k] / top : 1.0});
        }
        return std::size_t{0};
    });
    return table;
}

ResultTable run_runtime_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
    auto table = make_table(Kind::RuntimeSweep, {"n", "mean_degree", "theta_l", "theta_h", "k"});
    const auto cells = model_cells(cfg.model);
    const std::size_t reps = opt.full_scale ? cfg.full_samples : cfg.samples;
    const auto params = cfg.cds;

    struct Point {
        std::size_t n;
        double degree;
    };
    std::vector<Point> points;
    for (std::size_t n : cfg.sizes)
        for (double d : cfg.mean_degrees) points.push_back({n, d});

    // Timing runs stay sequential so wall-clock figures are not inflated by
    // contention between workers.
    RunOptions serial = opt;
    serial.threads = 1;
    run_tasks(points.size() * reps, serial, table, [&](std::size_t task, std::vector<ResultRow>& rows) {
        const auto& pt = points[task / reps];
        const std::size_t rep = task % reps;
        NetworkSpec spec;
        spec.type = NetworkSpec::Type::Er;
        spec.n = pt.n;
        spec.p = std::min(1.0, pt.degree / static_cast<double>(pt.n - 1));
        spec.weight = cfg.network.weight;
        auto g = std::make_shared<const Graph>(
            build_network(spec, cfg.seed ^ (static_cast<std::uint64_t>(task / reps) << 40), rep));
        std::size_t partial = 0;
        for (const auto& c : cells)
            for (std::size_t k : cfg.budgets) {
                if (k >= pt.n) continue;
                const auto out = cds_solve(make_problem(cfg.model, g, c, k), params);
                if (!out.converged) ++partial;
                const std::vector<std::string> key{std::to_string(pt.n), format_number(pt.degree),
                                                   c.theta_l, c.theta_h, std::to_string(k)};
                const std::string r = std::to_string(rep);
                rows.push_back({key, r, "elapsed", out.elapsed_seconds});
                rows.push_back({key, r, "n_evals", static_cast<double>(out.n_evals)});
                rows.push_back({key, r, "iterations", static_cast<double>(out.iterations)});
                rows.push_back({key, r, "evals_per_neighbor",
                                static_cast<double>(out.n_evals) /
                                    static_cast<double>(k * (pt.n - k))});
            }
        return partial;
    });
    return table;
}

ResultTable run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
    switch (cfg.kind) {
    case Kind::Propagate: return run_propagate(cfg, opt);
    case Kind::SbmEffects: return run_sbm_effects(cfg, opt);
    case Kind::Coexistence: return run_coexistence(cfg, opt);
    case Kind::ImAccuracyGrid: return run_im_accuracy_grid(cfg, opt);
    case Kind::ImBudgetSweep: return run_im_budget_sweep(cfg, opt);
    case Kind::MethodCompare: return run_method_compare(cfg, opt);
    case Kind::BudgetSaturation: return run_budget_saturation(cfg, opt);
    case Kind::RuntimeSweep: return run_runtime_sweep(cfg, opt);
    }
    fail(ErrorCode::InvalidArgument, "unknown experiment kind");
}

} // namespace gipmax::exp
