#include "qmc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qmc/errors.hpp"
#include "qmc/metro.hpp"

namespace qmc {

PairUpdate quantized_update(int left, int right) {
    if (left == right) return {left, right, UpdateKind::TrivialEqual};
    if (left - right == 1 || right - left == 1) return {right, left, UpdateKind::TrivialSwap};
    return {left > right ? left - 1 : left + 1,
            right > left ? right - 1 : right + 1, UpdateKind::Nontrivial};
}

ArrivalSampler::ArrivalSampler(const Schedule& schedule, TimeModel tm) : schedule_(&schedule) {
    if (schedule.frame_count() == 0)
        throw std::invalid_argument("arrival sampler needs a non-empty schedule");
    for (int k = 0; k < schedule.frame_count(); ++k) {
        auto rt = metropolis_rates(schedule.frame(k), tm == TimeModel::TimeVarying);
        FrameTable ft;
        double run = 0.0;
        for (std::size_t e = 0; e < rt.edges.size(); ++e) {
            ft.nodes.push_back(rt.edges[e]);
            run += rt.edge_rate[e];
            ft.cumulative.push_back(run);
        }
        if (rt.self_loops) {
            for (int x = 1; x <= rt.n; ++x) {
                ft.nodes.push_back({x, x});
                run += rt.self_rate[x];
                ft.cumulative.push_back(run);
            }
        }
        if (run <= 0.0)
            throw std::invalid_argument("frame " + std::to_string(k) + " carries no clock rate");
        tables_.push_back(std::move(ft));
    }
}

Arrival ArrivalSampler::next(double after, Rng& rng) const {
    double t = after;
    for (;;) {
        const FrameTable& ft = tables_[schedule_->frame_index_at(t)];
        double dt = rng.exponential(ft.cumulative.back());
        double boundary = std::floor(t) + 1.0;
        if (t + dt >= boundary) {
            t = boundary;
            continue;
        }
        t += dt;
        auto [u, v] = ft.nodes[rng.categorical(ft.cumulative)];
        return {t, u, v};
    }
}

Arrival next_arrival(const Schedule& schedule, TimeModel tm, double after, Rng& rng) {
    return ArrivalSampler(schedule, tm).next(after, rng);
}

namespace {

// max/min of the node values under +-1 moves; array-backed for compact value
// ranges, ordered map otherwise
class SpreadTracker {
public:
    explicit SpreadTracker(const std::vector<int>& values) {
        lo_ = *std::min_element(values.begin(), values.end());
        hi_ = *std::max_element(values.begin(), values.end());
        long long range = static_cast<long long>(hi_) - lo_ + 1;
        if (range <= 65536) {
            counts_.assign(static_cast<std::size_t>(range), 0);
            for (int v : values) ++counts_[v - lo_];
        } else {
            for (int v : values) ++sparse_[v];
        }
        cur_min_ = lo_;
        cur_max_ = hi_;
    }

    void move(int from, int to) {
        if (!counts_.empty()) {
            --counts_[from - lo_];
            ++counts_[to - lo_];
            while (counts_[cur_min_ - lo_] == 0) ++cur_min_;
            while (counts_[cur_max_ - lo_] == 0) --cur_max_;
        } else {
            if (--sparse_[from] == 0) sparse_.erase(from);
            ++sparse_[to];
            cur_min_ = sparse_.begin()->first;
            cur_max_ = sparse_.rbegin()->first;
        }
    }

    int min() const { return cur_min_; }
    int max() const { return cur_max_; }
    int spread() const { return cur_max_ - cur_min_; }

private:
    int lo_ = 0, hi_ = 0, cur_min_ = 0, cur_max_ = 0;
    std::vector<int> counts_;
    std::map<int, int> sparse_;
};

}  // namespace

ConvergenceReport run_consensus(const SimConfig& cfg, const SimObserver& observer) {
    if (cfg.schedule.frame_count() == 0)
        throw std::invalid_argument("run_consensus: empty schedule");
    int n = cfg.schedule.node_count();
    if (static_cast<int>(cfg.initial_values.size()) != n)
        throw std::invalid_argument("run_consensus: expected " + std::to_string(n) + " initial values");

    ConvergenceReport rep;
    std::vector<int> x = cfg.initial_values;
    SpreadTracker tracker(x);
    rep.spread_trace.push_back({0.0, tracker.spread()});
    if (tracker.spread() <= 1) {
        rep.converged = true;
        rep.final_values = std::move(x);
        return rep;
    }

    Rng rng(cfg.seed);
    ArrivalSampler sampler(cfg.schedule, cfg.time_model);
    double t = 0.0;
    for (;;) {
        Arrival a = sampler.next(t, rng);
        if (a.time > cfg.max_time) {
            rep.converged = false;
            rep.stop_time = cfg.max_time;
            break;
        }
        t = a.time;
        ++rep.events;
        if (a.u != a.v) {
            int& xu = x[a.u - 1];
            int& xv = x[a.v - 1];
            PairUpdate up = quantized_update(xu, xv);
            if (up.kind == UpdateKind::Nontrivial) {
                ++rep.nontrivial_updates;
                tracker.move(xu, up.left);
                tracker.move(xv, up.right);
            }
            xu = up.left;
            xv = up.right;
        }
        if (observer) observer(t, x);
        if (tracker.spread() <= 1) {
            rep.converged = true;
            rep.stop_time = t;
            break;
        }
        if (tracker.spread() < rep.spread_trace.back().second)
            rep.spread_trace.push_back({t, tracker.spread()});
    }
    if (rep.converged && tracker.spread() < rep.spread_trace.back().second)
        rep.spread_trace.push_back({rep.stop_time, tracker.spread()});
    rep.final_values = std::move(x);
    return rep;
}

namespace {

struct MeetingTable {
    std::vector<std::pair<int, int>> nodes;
    std::vector<double> cumulative;
};

MeetingTable build_meeting_table(const RateTable& rt, int a, int b, Process p) {
    MeetingTable t;
    double shared = rt.rate(a, b);
    double run = 0.0;
    for (std::size_t e = 0; e < rt.edges.size(); ++e) {
        auto [u, v] = rt.edges[e];
        double w = rt.edge_rate[e];
        if (p == Process::Virtual && shared > 0.0 && u == std::min(a, b) && v == std::max(a, b))
            w *= 2.0;
        t.nodes.push_back({u, v});
        run += w;
        t.cumulative.push_back(run);
    }
    if (rt.self_loops) {
        for (int i = 1; i <= rt.n; ++i) {
            double w = rt.self_rate[i];
            if (p == Process::Virtual && shared > 0.0 && (i == a || i == b)) w -= shared / 2.0;
            t.nodes.push_back({i, i});
            run += w;
            t.cumulative.push_back(run);
        }
    }
    return t;
}

}  // namespace

MeetingSample run_meeting(const Schedule& schedule, int x, int y, Process p, TimeModel tm,
                          std::uint64_t seed, double max_time) {
    if (schedule.frame_count() == 0)
        throw std::invalid_argument("run_meeting: empty schedule");
    int n = schedule.node_count();
    if (x < 1 || x > n || y < 1 || y > n)
        throw NodeOutOfRange("run_meeting: walker outside 1.." + std::to_string(n));
    if (x == y) return {0.0, 0};

    std::vector<RateTable> frame_rates;
    for (int k = 0; k < schedule.frame_count(); ++k)
        frame_rates.push_back(metropolis_rates(schedule.frame(k), tm == TimeModel::TimeVarying));

    Rng rng(seed);
    int a = x, b = y;
    double t = 0.0;
    std::uint64_t events = 0;
    int built_frame = -1;
    bool dirty = true;
    MeetingTable table;
    for (;;) {
        int frame = schedule.frame_index_at(t);
        if (frame != built_frame || dirty) {
            table = build_meeting_table(frame_rates[frame], a, b, p);
            built_frame = frame;
            dirty = false;
        }
        double dt = rng.exponential(table.cumulative.back());
        double boundary = std::floor(t) + 1.0;
        if (t + dt >= boundary) {
            t = boundary;
            if (t > max_time) throw TimeCapReached("meeting still open at max_time");
            continue;
        }
        t += dt;
        if (t > max_time) throw TimeCapReached("meeting still open at max_time");
        ++events;
        auto [u, v] = table.nodes[rng.categorical(table.cumulative)];
        if (u == v) continue;
        bool at_a = (u == a || v == a);
        bool at_b = (u == b || v == b);
        if (at_a && at_b) return {t, events};
        if (at_a) {
            a = (u == a ? v : u);
            if (p == Process::Virtual) dirty = true;
        } else if (at_b) {
            b = (u == b ? v : u);
            if (p == Process::Virtual) dirty = true;
        }
    }
}

double first_nontrivial_time(const SimConfig& cfg) {
    if (cfg.schedule.frame_count() == 0)
        throw std::invalid_argument("first_nontrivial_time: empty schedule");
    int n = cfg.schedule.node_count();
    if (static_cast<int>(cfg.initial_values.size()) != n)
        throw std::invalid_argument("first_nontrivial_time: expected " + std::to_string(n) +
                                    " initial values");
    std::vector<int> x = cfg.initial_values;
    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*hi - *lo <= 1)
        throw std::invalid_argument("first_nontrivial_time: initial spread below 2, no such update exists");

    Rng rng(cfg.seed);
    ArrivalSampler sampler(cfg.schedule, cfg.time_model);
    double t = 0.0;
    for (;;) {
        Arrival a = sampler.next(t, rng);
        if (a.time > cfg.max_time) throw TimeCapReached("no nontrivial update before max_time");
        t = a.time;
        if (a.u == a.v) continue;
        int& xu = x[a.u - 1];
        int& xv = x[a.v - 1];
        PairUpdate up = quantized_update(xu, xv);
        if (up.kind == UpdateKind::Nontrivial) return t;
        xu = up.left;
        xv = up.right;
    }
}

}  // namespace qmc
