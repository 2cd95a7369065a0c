#pragma once

#include "qmc/graph.hpp"
#include "qmc/linalg.hpp"

namespace qmc {

// Poisson clock rates of a graph: edge {u,v} ticks at 1/max(deg u, deg v).
// With self loops enabled every node x also ticks at 1 - (incident rate)/2,
// which makes the network-wide total exactly n.
struct RateTable {
    int n = 0;
    bool self_loops = false;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted
    std::vector<double> edge_rate;           // aligned with edges
    std::vector<double> self_rate;           // size n+1, zeros when disabled
    std::vector<double> incident_sum;        // size n+1, per-node sum of edge rates
    double total = 0.0;
    Matrix pair_rate;  // (n+1)x(n+1) lookup, zero off edges

    double rate(int x, int y) const { return pair_rate(x, y); }
};

RateTable metropolis_rates(const Graph& g, bool with_self_loops);

// Symmetric doubly stochastic single-walker transition matrix: off-diagonal
// entries are the edge rates, the diagonal absorbs the remainder.
Matrix metropolis_matrix(const Graph& g);

// Expected steps of the chain m to reach column node y from row node x,
// solved per target from h(x) = 1 + sum_z m(x,z) h(z), h(y) = 0.
// Requires a stochastic matrix; irreducibility failures surface as
// SingularSystem.
Matrix hitting_times(const Matrix& m);

// Smallest-index vertex theta with H(theta, x) <= H(x, theta) for all x
// (inbound hitting never slower than outbound, up to tol).
int hidden_vertex(const Matrix& h, double tol = 1e-9);

// Symmetric pair potential H(x,y) + H(y,theta) - H(theta,y).
Matrix hitting_potential(const Matrix& h, int theta);

struct ChainProfile {
    Matrix transition;
    Matrix hitting;
    int hidden = 0;
    Matrix potential;
};

ChainProfile analyze_chain(const Graph& g);

}  // namespace qmc
