#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gipmax/bounds.hpp"
#include "gipmax/graph.hpp"
#include "gipmax/propagation.hpp"

namespace gipmax {

/// Seed set as ascending node indices; the support of the binary vector z.
using SeedSet = std::vector<NodeId>;

/// Budget-constrained maximisation of s(x0) over x0 = h0 (.) z, sum z = k.
struct ImProblem {
    std::shared_ptr<const Graph> graph;
    BoundSchedule schedule;
    double gamma = 0.0;
    double eps = 1e-10;
    std::size_t t_max = 10000;
    std::size_t k = 1;
    std::vector<double> l0;
    std::vector<double> h0;

    std::size_t node_count() const { return graph ? graph->node_count() : 0; }
    PropagationConfig propagation_config() const;
    void validate() const;

    /// Uniform threshold-type bounds with alpha = mean weight of the graph.
    static ImProblem threshold(std::shared_ptr<const Graph> graph, double theta_l,
                               double theta_h, std::size_t k, double gamma = 0.0,
                               double l0 = 1.0, double h0 = 1.0);
    /// Linear (EIC-limit) dynamics with uniform initial bounds.
    static ImProblem eic(std::shared_ptr<const Graph> graph, std::size_t k,
                         double gamma = 0.0, double l0 = 1.0, double h0 = 1.0);
};

std::vector<std::uint8_t> seed_indicator(const SeedSet& seeds, std::size_t n);
SeedSet seeds_from_indicator(std::span<const std::uint8_t> z);

/// s(h0 (.) z). Throws InvalidArgument unless the seeds are k distinct,
/// in-range nodes, and NonConvergent when t_max is hit.
double objective(const ImProblem& p, const SeedSet& seeds);

/// Extreme-barrier objective: -infinity for infeasible seed sets.
double barrier_objective(const ImProblem& p, const SeedSet& seeds);

inline constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

/// Memoised, thread-safe barrier objective. Each distinct seed set is
/// evaluated at most once per successful lookup; concurrent duplicates are
/// allowed and store the same value. A run that hits t_max is stored with its
/// partial total and clears all_converged() instead of throwing.
class ObjectiveCache {
  public:
    /// Validates the problem once; lookups skip the per-call checks.
    explicit ObjectiveCache(const ImProblem& p);

    double operator()(const SeedSet& seeds);
    bool contains(const SeedSet& seeds) const;

    /// Number of distinct feasible seed sets evaluated.
    std::size_t n_evals() const;
    bool all_converged() const;

  private:
    const ImProblem& problem_;
    mutable std::mutex mutex_;
    std::map<SeedSet, double> memo_;
    bool all_converged_ = true;
};

struct SolverOutcome {
    std::string method;
    SeedSet seed_set;
    std::vector<std::uint8_t> z;
    double objective = 0.0;
    std::size_t n_evals = 0;
    std::size_t iterations = 0;
    double elapsed_seconds = 0.0;
    bool converged = true;
};

/// Katz factor used for ranking: 1 - gamma when the series converges,
/// otherwise 0.95 / rho(W) so a ranking still exists.
double ranking_katz_factor(const Graph& g, double gamma);

/// h0_j * c_j with c the Katz centrality at ranking_katz_factor.
std::vector<double> linear_scores(const ImProblem& p);

/// Top-k by h0_j c_j, the global optimum in the linear regime. Requires an
/// EIC-limit schedule or one that passes validate_eic_limit over
/// `certify_horizon` steps. Throws DivergentSeries when (1-gamma) rho(W) >= 1.
SolverOutcome exact_linear_solution(const ImProblem& p, std::size_t certify_horizon = 64);

/// Visits every feasible y with ||y - z||_1 <= d (y != z): all q-swaps for
/// q = 1..d/2. Incoming node tuples follow descending score (ascending index
/// on ties), outgoing tuples ascending index. `visit` returns false to stop.
void for_each_neighbor(const SeedSet& z, std::size_t n, std::size_t d,
                       std::span<const double> scores,
                       const std::function<bool(const SeedSet&)>& visit);

std::vector<SeedSet> neighborhood(const SeedSet& z, std::size_t n, std::size_t d,
                                  std::span<const double> scores);

struct CdsParams {
    double zeta = 0.1;
    double delta = 0.5;
    std::size_t radius = 2;
    /// Block label per node; when set, local searches are restarted from the
    /// top-scoring split of k over the blocks for every split.
    std::optional<std::vector<int>> community;

    void validate(std::size_t n) const;
};

/// Customised direct search: Katz warm start, swap-neighbourhood polling with
/// sufficient-improvement factor zeta decayed by delta, optional community
/// restarts. The result is a local maximiser with respect to the radius-d
/// neighbourhood.
SolverOutcome cds_solve(const ImProblem& p, const CdsParams& params = {});

struct RankingEntry {
    SeedSet seeds;
    double objective = 0.0;
};

/// All size-k seed sets, sorted by descending objective; equal objectives
/// keep lexicographic set order.
struct RankingTable {
    std::vector<RankingEntry> entries;

    double best() const { return entries.empty() ? 0.0 : entries.front().objective; }
    std::size_t size() const { return entries.size(); }
};

/// Binomial coefficient, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

/// Throws CombinatorialBlowup when C(n, k) > cap and NonConvergent when any
/// subset hits t_max.
RankingTable brute_force(const ImProblem& p, std::size_t cap = 10'000'000,
                         std::size_t threads = 1);

/// Best of n_s uniformly drawn size-k sets (first draw wins ties).
SolverOutcome random_sampling(const ImProblem& p, std::size_t n_s, std::uint64_t seed);

enum class CentralityKind { Degree, Katz };

/// Top-k by degree, or by h0_j c_j for Katz; evaluated once.
SolverOutcome centrality_method(const ImProblem& p, CentralityKind kind);

/// tau = s / s*. Returns 1 when s* = 0 (the objective is nonnegative, so s = 0).
double accuracy(double s, const RankingTable& ranking);

/// phi = (#{A : s(A) > s(A0)} + 1) / C(n, k). Throws InvalidArgument when the
/// seed set is not in the table.
double rank_metric(const SeedSet& seeds, const RankingTable& ranking);

} // namespace gipmax
