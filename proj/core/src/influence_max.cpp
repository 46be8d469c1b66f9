#include "gipmax/influence_max.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>

#include "evaluate.hpp"
#include "gipmax/centrality.hpp"
#include "gipmax/error.hpp"
#include "gipmax/parallel.hpp"
#include "gipmax/rng.hpp"

namespace gipmax {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_feasible(const ImProblem& p, const SeedSet& seeds) {
    if (seeds.size() != p.k) return false;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (seeds[i] >= p.node_count()) return false;
        if (i > 0 && seeds[i] <= seeds[i - 1]) return false;
    }
    return true;
}

SeedSet normalized(SeedSet seeds) {
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

/// s(h0 (.) z) with no checks; the caller has validated p and the seeds.
PropagationResult evaluate_seeds(const ImProblem& p, const SeedSet& seeds) {
    std::vector<double> x0(p.node_count(), 0.0);
    for (NodeId j : seeds) x0[j] = p.h0[j];
    return detail::evaluate_unchecked(*p.graph, p.schedule, p.propagation_config(), x0);
}

std::vector<NodeId> top_by_score(std::span<const double> scores, std::size_t k) {
    auto order = rank_by_score(scores);
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

SolverOutcome make_outcome(std::string method, const ImProblem& p, SeedSet seeds, double value) {
    SolverOutcome out;
    out.method = std::move(method);
    out.z = seed_indicator(seeds, p.node_count());
    out.seed_set = std::move(seeds);
    out.objective = value;
    return out;
}

} // namespace

PropagationConfig ImProblem::propagation_config() const {
    return PropagationConfig{gamma, eps, t_max, false};
}

void ImProblem::validate() const {
    if (!graph) fail(ErrorCode::InvalidArgument, "problem has no graph");
    const std::size_t n = node_count();
    if (n == 0) fail(ErrorCode::EmptyGraph, "problem graph has no nodes");
    if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    if (k > n)
        fail(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    if (l0.size() != n || h0.size() != n)
        fail(ErrorCode::InvalidArgument, "l0 and h0 need one entry per node");
    propagation_config().validate();
    schedule.validate(n);
    for (NodeId j = 0; j < n; ++j) {
        if (!(l0[j] > 0.0) || !(h0[j] >= l0[j]) || !std::isfinite(h0[j]))
            fail(ErrorCode::InvalidArgument,
                 "initial bounds of node " + std::to_string(j) + " need 0 < l0 <= h0");
        const Bound b = schedule.at(j, 0);
        if (!b.contains(l0[j]) || !b.contains(h0[j]))
            fail(ErrorCode::InvalidArgument,
                 "schedule's t = 0 bounds disagree with l0/h0 at node " + std::to_string(j));
    }
}

ImProblem ImProblem::threshold(std::shared_ptr<const Graph> graph, double theta_l,
                               double theta_h, std::size_t k, double gamma, double l0,
                               double h0) {
    if (!graph) fail(ErrorCode::InvalidArgument, "problem has no graph");
    ImProblem p;
    p.schedule = BoundSchedule::threshold(theta_l, theta_h, mean_weight(*graph), l0, h0);
    p.gamma = gamma;
    p.k = k;
    p.l0.assign(graph->node_count(), l0);
    p.h0.assign(graph->node_count(), h0);
    p.graph = std::move(graph);
    return p;
}

ImProblem ImProblem::eic(std::shared_ptr<const Graph> graph, std::size_t k, double gamma,
                         double l0, double h0) {
    if (!graph) fail(ErrorCode::InvalidArgument, "problem has no graph");
    ImProblem p;
    p.schedule = BoundSchedule::eic_limit();
    p.gamma = gamma;
    p.k = k;
    p.l0.assign(graph->node_count(), l0);
    p.h0.assign(graph->node_count(), h0);
    p.graph = std::move(graph);
    return p;
}

std::vector<std::uint8_t> seed_indicator(const SeedSet& seeds, std::size_t n) {
    std::vector<std::uint8_t> z(n, 0);
    for (NodeId j : seeds) {
        if (j >= n) fail(ErrorCode::InvalidArgument, "seed " + std::to_string(j) + " out of range");
        z[j] = 1;
    }
    return z;
}

SeedSet seeds_from_indicator(std::span<const std::uint8_t> z) {
    SeedSet seeds;
    for (std::size_t j = 0; j < z.size(); ++j)
        if (z[j]) seeds.push_back(static_cast<NodeId>(j));
    return seeds;
}

double objective(const ImProblem& p, const SeedSet& seeds) {
    p.validate();
    const SeedSet sorted = normalized(seeds);
    if (!is_feasible(p, sorted))
        fail(ErrorCode::InvalidArgument, "seed set must hold k distinct nodes in range");
    const auto r = evaluate_seeds(p, sorted);
    if (!r.converged)
        fail(ErrorCode::NonConvergent,
             "influence did not settle within t_max = " + std::to_string(p.t_max));
    return r.total;
}

double barrier_objective(const ImProblem& p, const SeedSet& seeds) {
    p.validate();
    if (!is_feasible(p, normalized(seeds))) return kInfeasible;
    return objective(p, seeds);
}

ObjectiveCache::ObjectiveCache(const ImProblem& p) : problem_(p) { p.validate(); }

double ObjectiveCache::operator()(const SeedSet& seeds) {
    SeedSet key = normalized(seeds);
    if (!is_feasible(problem_, key)) return kInfeasible;
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const auto r = evaluate_seeds(problem_, key);
    std::lock_guard lock(mutex_);
    if (!r.converged) all_converged_ = false;
    memo_.emplace(std::move(key), r.total);
    return r.total;
}

bool ObjectiveCache::contains(const SeedSet& seeds) const {
    std::lock_guard lock(mutex_);
    return memo_.count(normalized(seeds)) != 0;
}

std::size_t ObjectiveCache::n_evals() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

bool ObjectiveCache::all_converged() const {
    std::lock_guard lock(mutex_);
    return all_converged_;
}

double ranking_katz_factor(const Graph& g, double gamma) {
    const double rho = spectral_radius(g);
    if ((1.0 - gamma) * rho < 1.0) return 1.0 - gamma;
    return 0.95 / rho;
}

std::vector<double> linear_scores(const ImProblem& p) {
    p.validate();
    auto c = katz_centrality(*p.graph, ranking_katz_factor(*p.graph, p.gamma));
    for (std::size_t j = 0; j < c.values.size(); ++j) c.values[j] *= p.h0[j];
    return std::move(c.values);
}

SolverOutcome exact_linear_solution(const ImProblem& p, std::size_t certify_horizon) {
    const auto start = Clock::now();
    p.validate();
    if (!p.schedule.is_eic_limit() &&
        !validate_eic_limit(*p.graph, p.schedule, p.h0, certify_horizon).empty())
        fail(ErrorCode::InvalidArgument,
             "schedule is not certified linear; the exact solution does not apply");

    const auto c = katz_centrality(*p.graph, 1.0 - p.gamma);
    ObjectiveCache cache(p);
    SeedSet seeds = top_k(c, p.h0, p.k);
    const double value = cache(seeds);
    auto out = make_outcome("exact", p, std::move(seeds), value);
    out.n_evals = cache.n_evals();
    out.converged = cache.all_converged();
    out.elapsed_seconds = seconds_since(start);
    return out;
}

void for_each_neighbor(const SeedSet& z, std::size_t n, std::size_t d,
                       std::span<const double> scores,
                       const std::function<bool(const SeedSet&)>& visit) {
    if (d < 2 || d % 2 != 0) fail(ErrorCode::InvalidArgument, "radius must be even and >= 2");
    if (!scores.empty() && scores.size() != n)
        fail(ErrorCode::InvalidArgument, "score vector must have one entry per node");

    std::vector<char> in_z(n, 0);
    for (NodeId j : z) in_z[j] = 1;
    std::vector<double> key(scores.begin(), scores.end());
    if (key.empty()) key.assign(n, 0.0);
    std::vector<NodeId> incoming;
    for (NodeId j : rank_by_score(key))
        if (!in_z[j]) incoming.push_back(j);
    const std::vector<NodeId>& outgoing = z;

    const std::size_t q_max = std::min({d / 2, outgoing.size(), incoming.size()});
    SeedSet y;
    std::vector<std::size_t> in_idx, out_idx;
    // Advances a combination of positions in [0, m) in lexicographic order.
    auto next_combination = [](std::vector<std::size_t>& idx, std::size_t m) {
        const std::size_t q = idx.size();
        for (std::size_t i = q; i-- > 0;)
            if (idx[i] < m - q + i) {
                ++idx[i];
                for (std::size_t r = i + 1; r < q; ++r) idx[r] = idx[r - 1] + 1;
                return true;
            }
        return false;
    };

    for (std::size_t q = 1; q <= q_max; ++q) {
        in_idx.resize(q);
        std::iota(in_idx.begin(), in_idx.end(), std::size_t{0});
        do {
            out_idx.resize(q);
            std::iota(out_idx.begin(), out_idx.end(), std::size_t{0});
            do {
                y.clear();
                std::size_t o = 0;
                for (std::size_t i = 0; i < outgoing.size(); ++i) {
                    if (o < q && out_idx[o] == i) {
                        ++o;
                        continue;
                    }
                    y.push_back(outgoing[i]);
                }
                for (std::size_t i : in_idx) y.push_back(incoming[i]);
                std::sort(y.begin(), y.end());
                if (!visit(y)) return;
            } while (next_combination(out_idx, outgoing.size()));
        } while (next_combination(in_idx, incoming.size()));
    }
}

std::vector<SeedSet> neighborhood(const SeedSet& z, std::size_t n, std::size_t d,
                                  std::span<const double> scores) {
    std::vector<SeedSet> out;
    for_each_neighbor(z, n, d, scores, [&](const SeedSet& y) {
        out.push_back(y);
        return true;
    });
    return out;
}

void CdsParams::validate(std::size_t n) const {
    if (!(zeta > 0.0)) fail(ErrorCode::InvalidArgument, "zeta must be positive");
    if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
    if (radius < 2 || radius % 2 != 0)
        fail(ErrorCode::InvalidArgument, "radius must be even and >= 2");
    if (community) {
        if (community->size() != n)
            fail(ErrorCode::InvalidArgument, "community labels need one entry per node");
        for (int b : *community)
            if (b < 0) fail(ErrorCode::InvalidArgument, "community labels must be nonnegative");
    }
}

namespace {

struct LocalSearch {
    const ImProblem& problem;
    const CdsParams& params;
    std::span<const double> scores;
    ObjectiveCache& cache;
    std::size_t iterations = 0;

    /// Polls until no neighbour strictly improves; returns the local maximiser.
    std::pair<SeedSet, double> run(SeedSet z) {
        double s = cache(z);
        double zeta = params.zeta;
        for (;;) {
            ++iterations;
            SeedSet best;
            double best_value = s;
            bool sufficient = false;
            for_each_neighbor(z, problem.node_count(), params.radius, scores,
                              [&](const SeedSet& y) {
                                  const double v = cache(y);
                                  if (v > (1.0 + zeta) * s) {
                                      best = y;
                                      best_value = v;
                                      sufficient = true;
                                      return false;
                                  }
                                  if (v > best_value) {
                                      best = y;
                                      best_value = v;
                                  }
                                  return true;
                              });
            if (best.empty()) return {std::move(z), s};
            if (!sufficient) zeta *= params.delta;
            z = std::move(best);
            s = best_value;
        }
    }
};

/// Every way to split k over blocks with the given capacities, lexicographic.
void for_each_split(std::span<const std::size_t> capacity, std::size_t k,
                    const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> split(capacity.size(), 0);
    std::vector<std::size_t> room(capacity.size() + 1, 0);
    for (std::size_t b = capacity.size(); b-- > 0;) room[b] = room[b + 1] + capacity[b];
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t b, std::size_t left) {
        if (b == capacity.size()) {
            if (left == 0) visit(split);
            return;
        }
        const std::size_t lo = left > room[b + 1] ? left - room[b + 1] : 0;
        for (std::size_t q = lo; q <= std::min(left, capacity[b]); ++q) {
            split[b] = q;
            rec(b + 1, left - q);
        }
    };
    rec(0, k);
}

} // namespace

SolverOutcome cds_solve(const ImProblem& p, const CdsParams& params) {
    const auto start = Clock::now();
    p.validate();
    params.validate(p.node_count());

    const auto scores = linear_scores(p);
    ObjectiveCache cache(p);
    LocalSearch search{p, params, scores, cache};

    auto [best, best_value] = search.run(top_by_score(scores, p.k));

    if (params.community) {
        const auto& label = *params.community;
        const std::size_t blocks =
            static_cast<std::size_t>(*std::max_element(label.begin(), label.end())) + 1;
        std::vector<std::vector<NodeId>> ranked(blocks);
        for (NodeId j : rank_by_score(scores)) ranked[label[j]].push_back(j);
        std::vector<std::size_t> capacity(blocks);
        for (std::size_t b = 0; b < blocks; ++b) capacity[b] = ranked[b].size();

        for_each_split(capacity, p.k, [&](const std::vector<std::size_t>& split) {
            SeedSet start_point;
            for (std::size_t b = 0; b < blocks; ++b)
                start_point.insert(start_point.end(), ranked[b].begin(),
                                   ranked[b].begin() + static_cast<std::ptrdiff_t>(split[b]));
            std::sort(start_point.begin(), start_point.end());
            if (cache.contains(start_point)) return;
            auto [local, value] = search.run(std::move(start_point));
            if (value > best_value) {
                best = std::move(local);
                best_value = value;
            }
        });
    }

    auto out = make_outcome("cds", p, std::move(best), best_value);
    out.n_evals = cache.n_evals();
    out.iterations = search.iterations;
    out.converged = cache.all_converged();
    out.elapsed_seconds = seconds_since(start);
    return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        // r * (n - i) is divisible by i + 1; saturate before it can overflow.
        if (r > SIZE_MAX / (n - i)) return SIZE_MAX;
        r = r * (n - i) / (i + 1);
    }
    return r;
}

RankingTable brute_force(const ImProblem& p, std::size_t cap, std::size_t threads) {
    p.validate();
    const std::size_t n = p.node_count();
    const std::size_t total = binomial(n, p.k);
    if (total > cap)
        fail(ErrorCode::CombinatorialBlowup, "C(" + std::to_string(n) + ", " +
                                                 std::to_string(p.k) + ") = " +
                                                 std::to_string(total) + " exceeds the cap");

    RankingTable table;
    table.entries.resize(total);
    SeedSet combo(p.k);
    std::iota(combo.begin(), combo.end(), NodeId{0});
    for (std::size_t idx = 0; idx < total; ++idx) {
        table.entries[idx].seeds = combo;
        for (std::size_t i = p.k; i-- > 0;)
            if (combo[i] < n - p.k + i) {
                ++combo[i];
                for (std::size_t r = i + 1; r < p.k; ++r) combo[r] = combo[r - 1] + 1;
                break;
            }
    }

    constexpr std::size_t chunk = 256;
    std::atomic<bool> diverged{false};
    parallel_for((total + chunk - 1) / chunk, threads, [&](std::size_t c) {
        const std::size_t end = std::min(total, (c + 1) * chunk);
        for (std::size_t idx = c * chunk; idx < end; ++idx) {
            auto& e = table.entries[idx];
            const auto r = evaluate_seeds(p, e.seeds);
            if (!r.converged) diverged = true;
            e.objective = r.total;
        }
    });
    if (diverged)
        fail(ErrorCode::NonConvergent,
             "some seed sets did not settle within t_max = " + std::to_string(p.t_max));

    std::stable_sort(table.entries.begin(), table.entries.end(),
                     [](const RankingEntry& a, const RankingEntry& b) {
                         return a.objective > b.objective;
                     });
    return table;
}

SolverOutcome random_sampling(const ImProblem& p, std::size_t n_s, std::uint64_t seed) {
    const auto start = Clock::now();
    if (n_s < 1) fail(ErrorCode::InvalidArgument, "sample count must be at least 1");
    ObjectiveCache cache(p);
    auto rng = stream_engine(seed, 0);
    const std::size_t n = p.node_count();

    std::vector<NodeId> pool(n);
    SeedSet best;
    double best_value = kInfeasible;
    for (std::size_t draw = 0; draw < n_s; ++draw) {
        std::iota(pool.begin(), pool.end(), NodeId{0});
        for (std::size_t i = 0; i < p.k; ++i)
            std::swap(pool[i], pool[i + uniform_below(rng, n - i)]);
        SeedSet seeds(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(p.k));
        std::sort(seeds.begin(), seeds.end());
        const double v = cache(seeds);
        if (v > best_value) {
            best = std::move(seeds);
            best_value = v;
        }
    }
    auto out = make_outcome("random", p, std::move(best), best_value);
    out.n_evals = cache.n_evals();
    out.iterations = n_s;
    out.converged = cache.all_converged();
    out.elapsed_seconds = seconds_since(start);
    return out;
}

SolverOutcome centrality_method(const ImProblem& p, CentralityKind kind) {
    const auto start = Clock::now();
    ObjectiveCache cache(p);
    SeedSet seeds = kind == CentralityKind::Degree
                        ? top_k(degree_centrality(*p.graph), {}, p.k)
                        : top_by_score(linear_scores(p), p.k);
    const double value = cache(seeds);
    auto out = make_outcome(kind == CentralityKind::Degree ? "degree" : "katz", p,
                            std::move(seeds), value);
    out.n_evals = cache.n_evals();
    out.converged = cache.all_converged();
    out.elapsed_seconds = seconds_since(start);
    return out;
}

double accuracy(double s, const RankingTable& ranking) {
    const double best = ranking.best();
    if (best == 0.0) return 1.0;
    return s / best;
}

double rank_metric(const SeedSet& seeds, const RankingTable& ranking) {
    const SeedSet key = normalized(seeds);
    auto it = std::find_if(ranking.entries.begin(), ranking.entries.end(),
                           [&](const RankingEntry& e) { return e.seeds == key; });
    if (it == ranking.entries.end())
        fail(ErrorCode::InvalidArgument, "seed set is not in the ranking table");
    const double s = it->objective;
    const auto better = std::count_if(ranking.entries.begin(), ranking.entries.end(),
                                      [&](const RankingEntry& e) { return e.objective > s; });
    return static_cast<double>(better + 1) / static_cast<double>(ranking.size());
}

} // namespace gipmax
