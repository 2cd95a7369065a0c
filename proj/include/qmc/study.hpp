#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/model.hpp"

namespace qmc {

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;   // mean -/+ 1.96 std errors
    double ci_high = 0.0;
    std::uint64_t trials = 0;

    bool operator==(const Estimate&) const = default;
};

// Mean meeting time over independent trials; trial k runs with seed
// stream_seed(master_seed, k), so the result is identical for any job count.
// A trial that hits max_time raises CensoredSample.
Estimate estimate_meeting(const Schedule& schedule, int x, int y, Process p, TimeModel tm,
                          std::uint64_t trials, std::uint64_t master_seed, int jobs = 1,
                          double max_time = 1e6);

struct BoundCheck {
    std::string name;
    std::string relation;  // "<=" or ">="
    double value = 0.0;
    double limit = 0.0;
    double margin = 0.0;  // >= 0 when the bound holds, tolerance aside
    bool pass = false;
};

struct BoundReport {
    int n = 0;
    std::vector<BoundCheck> checks;
    bool all_pass = false;
};

// Analytic inequality suite: meeting times against the potential and the
// n^2 caps, hitting-time cap, and the spectral/absorption bounds of the
// rate-n pair chain. Sized for small networks (default cap 12 nodes).
BoundReport verify_bounds(const Graph& g, int analytic_limit = 12);
std::vector<BoundReport> verify_bounds(const Schedule& schedule, int analytic_limit = 12);

struct ScalingPoint {
    int n = 0;
    std::uint64_t trials = 0;
    double mean_time = 0.0;
    double std_error = 0.0;
    double normalized = 0.0;  // mean / (n^2 ln n) static, mean / (n^2 ln^2 n) time-varying
};

struct ScalingResult {
    std::string family;
    TimeModel time_model = TimeModel::Static;
    std::uint64_t trials_per_n = 0;
    std::uint64_t seed = 0;
    std::vector<ScalingPoint> points;
    double fit_exponent = 0.0;  // least-squares slope of log mean vs log n
};

// One node starts at n, one at 0, the rest midway: the widest admissible
// spread for the value range [0, n]. Node 1 carries the top value, node n
// the bottom.
std::vector<int> worst_spread_values(int n);

// Convergence-time sweep over sizes for a graph family (path, cycle,
// complete, star, erdos_renyi) or the two-frame alternating schedule
// "path_star_alt". Trials that hit max_time raise CensoredSample.
ScalingResult scaling_study(const std::string& family, const std::vector<int>& sizes,
                            std::uint64_t trials, TimeModel tm, std::uint64_t master_seed,
                            int jobs = 1, double max_time = 1e6, double edge_prob = 0.5);

}  // namespace qmc
