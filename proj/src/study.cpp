#include "qmc/study.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qmc/errors.hpp"
#include "qmc/metro.hpp"
#include "qmc/pairchain.hpp"
#include "qmc/rng.hpp"
#include "qmc/sim.hpp"

namespace qmc {

namespace {

// fan trials over jobs threads; out[k] only depends on k, so aggregation
// order is fixed regardless of interleaving
template <class Fn>
std::vector<double> run_trials(std::uint64_t trials, int jobs, const Fn& fn) {
    std::vector<double> out(trials);
    if (jobs <= 1) {
        for (std::uint64_t k = 0; k < trials; ++k) out[k] = fn(k);
        return out;
    }
    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::uint64_t k = cursor.fetch_add(1);
            if (k >= trials) return;
            try {
                out[k] = fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                cursor = trials;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

Estimate summarize(const std::vector<double>& samples) {
    Estimate e;
    e.trials = samples.size();
    double sum = 0.0;
    for (double v : samples) sum += v;
    e.mean = sum / e.trials;
    if (e.trials > 1) {
        double ss = 0.0;
        for (double v : samples) ss += (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(ss / (e.trials - 1)) / std::sqrt(double(e.trials));
    }
    e.ci_low = e.mean - 1.96 * e.std_error;
    e.ci_high = e.mean + 1.96 * e.std_error;
    return e;
}

}  // namespace

Estimate estimate_meeting(const Schedule& schedule, int x, int y, Process p, TimeModel tm,
                          std::uint64_t trials, std::uint64_t master_seed, int jobs,
                          double max_time) {
    if (trials == 0) throw std::invalid_argument("estimate_meeting: need at least one trial");
    auto samples = run_trials(trials, jobs, [&](std::uint64_t k) {
        try {
            return run_meeting(schedule, x, y, p, tm, stream_seed(master_seed, k), max_time).tau;
        } catch (const TimeCapReached& e) {
            throw CensoredSample(std::string("trial ") + std::to_string(k) + " censored: " + e.what());
        }
    });
    return summarize(samples);
}

namespace {

constexpr double kBoundTol = 1e-8;
constexpr double kAbsorptionTol = 1e-6;

BoundCheck check_le(std::string name, double value, double limit, double tol = kBoundTol) {
    BoundCheck c{std::move(name), "<=", value, limit, limit - value, false};
    c.pass = c.margin >= -tol;
    return c;
}

BoundCheck check_ge(std::string name, double value, double limit, double tol = kBoundTol) {
    BoundCheck c{std::move(name), ">=", value, limit, value - limit, false};
    c.pass = c.margin >= -tol;
    return c;
}

}  // namespace

BoundReport verify_bounds(const Graph& g, int analytic_limit) {
    int n = g.node_count();
    if (n < 2 || n > analytic_limit)
        throw std::invalid_argument("verify_bounds: node count " + std::to_string(n) +
                                    " outside 2.." + std::to_string(analytic_limit));

    ChainProfile chain = analyze_chain(g);
    Matrix mo = meeting_times(g, Process::Original);
    Matrix mv = meeting_times(g, Process::Virtual);
    AbsorbingSpectrum spec = absorbing_spectrum(g);

    double max_h = 0.0, max_mo = 0.0, max_mv = 0.0, worst_gap = -1e300;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            max_h = std::max(max_h, chain.hitting(x, y));
            if (x == y) continue;
            max_mo = std::max(max_mo, mo(x, y));
            max_mv = std::max(max_mv, mv(x, y));
            worst_gap = std::max(worst_gap, mv(x, y) - 0.5 * chain.potential(x, y));
        }
    }
    double max_absorb = 0.0;
    for (double v : spec.absorb_steps) max_absorb = std::max(max_absorb, v);

    double cap = 6.0 * n * n;
    BoundReport rep;
    rep.n = n;
    rep.checks.push_back(check_le("virtual_meeting_minus_half_potential", worst_gap, 0.0));
    rep.checks.push_back(check_le("virtual_meeting_max", max_mv, cap));
    rep.checks.push_back(check_le("original_meeting_max_vs_twice_virtual", max_mo, 2.0 * max_mv));
    rep.checks.push_back(check_le("original_meeting_max", max_mo, 2.0 * cap));
    rep.checks.push_back(check_le("hitting_time_max", max_h, cap));
    rep.checks.push_back(check_le("transient_lambda_max", spec.lambda_max,
                                  1.0 - 1.0 / (6.0 * n * n * n)));
    rep.checks.push_back(check_ge("transient_lambda_min", spec.lambda_min, 1.0 - 4.0 / n));
    rep.checks.push_back(check_le("inverse_spectral_gap_vs_absorption",
                                  1.0 / (1.0 - spec.lambda_max), max_absorb, kAbsorptionTol));
    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

std::vector<BoundReport> verify_bounds(const Schedule& schedule, int analytic_limit) {
    std::vector<BoundReport> reports;
    for (int k = 0; k < schedule.frame_count(); ++k)
        reports.push_back(verify_bounds(schedule.frame(k), analytic_limit));
    return reports;
}

std::vector<int> worst_spread_values(int n) {
    if (n < 2) throw std::invalid_argument("worst_spread_values: need n >= 2");
    std::vector<int> x(n, static_cast<int>(std::llround(n / 2.0)));
    x.front() = n;
    x.back() = 0;
    return x;
}

namespace {

Schedule family_schedule(const std::string& family, int n, std::uint64_t gen_seed, double edge_prob) {
    if (family == "path_star_alt")
        return Schedule({generate(Family::Path, n), generate(Family::Star, n)}, true);
    return Schedule(generate(family_from_string(family), n, gen_seed, edge_prob));
}

}  // namespace

ScalingResult scaling_study(const std::string& family, const std::vector<int>& sizes,
                            std::uint64_t trials, TimeModel tm, std::uint64_t master_seed,
                            int jobs, double max_time, double edge_prob) {
    if (sizes.empty()) throw std::invalid_argument("scaling_study: no sizes given");
    if (trials == 0) throw std::invalid_argument("scaling_study: need at least one trial");

    ScalingResult res;
    res.family = family;
    res.time_model = tm;
    res.trials_per_n = trials;
    res.seed = master_seed;

    for (int n : sizes) {
        Schedule sched = family_schedule(family, n, stream_seed(master_seed, n), edge_prob);
        std::vector<int> x0 = worst_spread_values(n);
        std::uint64_t size_seed = stream_seed(master_seed, 0x5ca1e000ULL + n);
        auto samples = run_trials(trials, jobs, [&](std::uint64_t k) {
            SimConfig cfg{sched, x0, tm, stream_seed(size_seed, k), max_time};
            ConvergenceReport rep = run_consensus(cfg);
            if (!rep.converged)
                throw CensoredSample("size " + std::to_string(n) + " trial " + std::to_string(k) +
                                     " still open at max_time");
            return rep.stop_time;
        });
        Estimate e = summarize(samples);
        double log_n = std::log(n);
        double scale = tm == TimeModel::Static ? n * n * log_n : n * n * log_n * log_n;
        res.points.push_back({n, trials, e.mean, e.std_error, e.mean / scale});
    }

    // least-squares slope of log mean vs log n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& pt : res.points) {
        double lx = std::log(pt.n), ly = std::log(pt.mean_time);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double m = static_cast<double>(res.points.size());
    double denom = m * sxx - sx * sx;
    res.fit_exponent = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
    return res;
}

}  // namespace qmc
