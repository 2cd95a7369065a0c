#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/model.hpp"
#include "qmc/rng.hpp"

namespace qmc {

enum class UpdateKind { Nontrivial, TrivialEqual, TrivialSwap };

struct PairUpdate {
    int left = 0;
    int right = 0;
    UpdateKind kind = UpdateKind::TrivialEqual;
};

// One asynchronous exchange across an active edge: the larger value steps
// down, the smaller steps up. Values one apart swap; equal values hold.
PairUpdate quantized_update(int left, int right);

struct Arrival {
    double time = 0.0;
    int u = 0;  // u == v marks a self-loop tick
    int v = 0;
};

// Samples successive arrivals of the frame-dependent Poisson clocks. The
// global clock restarts at every integer boundary so a frame switch never
// sees an arrival drawn under the previous frame's rates (restarting is
// exact by memorylessness).
class ArrivalSampler {
public:
    ArrivalSampler(const Schedule& schedule, TimeModel tm);
    Arrival next(double after, Rng& rng) const;

private:
    struct FrameTable {
        std::vector<std::pair<int, int>> nodes;
        std::vector<double> cumulative;
    };
    const Schedule* schedule_;
    std::vector<FrameTable> tables_;
};

Arrival next_arrival(const Schedule& schedule, TimeModel tm, double after, Rng& rng);

struct SimConfig {
    Schedule schedule;
    std::vector<int> initial_values;  // one per node, node i at index i-1
    TimeModel time_model = TimeModel::Static;
    std::uint64_t seed = 0;
    double max_time = 1e6;
};

struct ConvergenceReport {
    bool converged = false;
    double stop_time = 0.0;
    std::uint64_t events = 0;
    std::uint64_t nontrivial_updates = 0;
    std::vector<int> final_values;
    // (time, max-min): the initial spread plus one entry per strict decrease
    std::vector<std::pair<double, int>> spread_trace;

    bool operator==(const ConvergenceReport&) const = default;
};

using SimObserver = std::function<void(double, const std::vector<int>&)>;

// Runs the quantized exchange dynamics until the spread drops to <= 1 or
// max_time passes (then converged=false). The value sum is conserved.
ConvergenceReport run_consensus(const SimConfig& cfg, const SimObserver& observer = {});

struct MeetingSample {
    double tau = 0.0;
    std::uint64_t events = 0;
};

// Two tagged walkers started at x and y; an arrival on an edge incident to
// one walker moves it, an arrival on the edge joining them stops the run.
// Under the Virtual process the joining edge runs at twice its rate while
// the walkers are adjacent (self-loop rates at the walker nodes shrink to
// compensate when the rate-n model is active). Throws TimeCapReached past
// max_time.
MeetingSample run_meeting(const Schedule& schedule, int x, int y, Process p, TimeModel tm,
                          std::uint64_t seed, double max_time = 1e6);

// Time of the first exchange that changes the value multiset. Requires an
// initial spread of at least 2 (otherwise no such exchange can happen).
double first_nontrivial_time(const SimConfig& cfg);

}  // namespace qmc
