#pragma once

#include "qmc/graph.hpp"
#include "qmc/linalg.hpp"
#include "qmc/metro.hpp"
#include "qmc/model.hpp"

namespace qmc {

// Expected time until an arrival lands on an edge incident to both walkers,
// for every start pair; symmetric with zero diagonal. Solved as an absorbing
// linear system over unordered pairs: an adjacent pair absorbs at its edge
// rate (Original) or twice that (Virtual). Self-loop ticks never move a
// walker, so both time models yield the same values; the parameter selects
// the rate table used for assembly.
Matrix meeting_times(const Graph& g, Process p, TimeModel tm = TimeModel::Static);

// Lambda_xy: combined incident edge rate of the two walker nodes, with a
// shared edge counted from both sides.
double incident_rate_sum(const RateTable& rt, int x, int y);

// Ordered-pair state indexing shared by pair_jump_matrix and
// absorbing_spectrum: repeated-vertex states (x,x) occupy slots 0..n-1, then
// distinct pairs (x,y) in lexicographic order.
int pair_state_index(int n, int x, int y);
std::pair<int, int> pair_state_nodes(int n, int idx);

// Jump chain of the walker pair conditioned on arrivals incident to either
// walker (static rates, no self loops). Stochastic over all n^2 states;
// repeated-vertex rows use Lambda_xx = 2 * (incident rate of x).
Matrix pair_jump_matrix(const Graph& g);

// One-arrival transition structure of the paired walkers under the rate-n
// self-loop model: `full` is the n^2 x n^2 stochastic matrix with
// repeated-vertex states absorbing, `transient` its symmetric sub-stochastic
// block on distinct pairs. absorb_steps are expected arrivals to absorption
// (row sums of (I - transient)^-1); absorb_steps/n reproduces the Virtual
// meeting times.
struct AbsorbingSpectrum {
    Matrix full;
    Matrix transient;
    std::vector<double> eigenvalues;  // of transient, ascending
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    std::vector<double> absorb_steps;  // indexed by pair_state_index - n
};

AbsorbingSpectrum absorbing_spectrum(const Graph& g);

}  // namespace qmc
