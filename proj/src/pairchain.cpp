#include "qmc/pairchain.hpp"

#include <stdexcept>

#include "qmc/errors.hpp"

namespace qmc {

namespace {

// unordered pair {x,y}, x != y, mapped to 0..n(n-1)/2-1
int unordered_index(int n, int x, int y) {
    if (x > y) std::swap(x, y);
    return (x - 1) * n - x * (x + 1) / 2 + y - 1;
}

}  // namespace

Matrix meeting_times(const Graph& g, Process p, TimeModel tm) {
    int n = g.node_count();
    if (n < 2) throw std::invalid_argument("meeting_times: need at least two nodes");
    auto rt = metropolis_rates(g, tm == TimeModel::TimeVarying);

    int pairs = n * (n - 1) / 2;
    Matrix a(pairs, pairs);
    std::vector<double> b(pairs, 1.0);
    for (int x = 1; x <= n; ++x) {
        for (int y = x + 1; y <= n; ++y) {
            int row = unordered_index(n, x, y);
            double absorb = rt.rate(x, y) * (p == Process::Virtual ? 2.0 : 1.0);
            double outflow = absorb;
            for (int r : g.neighbors(x)) {
                if (r == y) continue;
                double w = rt.rate(x, r);
                outflow += w;
                a(row, unordered_index(n, r, y)) -= w;
            }
            for (int s : g.neighbors(y)) {
                if (s == x) continue;
                double w = rt.rate(y, s);
                outflow += w;
                a(row, unordered_index(n, x, s)) -= w;
            }
            a(row, row) += outflow;
        }
    }
    auto m = solve_linear(std::move(a), std::move(b));

    Matrix out(n, n);
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y)
            out(x - 1, y - 1) = out(y - 1, x - 1) = m[unordered_index(n, x, y)];
    return out;
}

double incident_rate_sum(const RateTable& rt, int x, int y) {
    if (x < 1 || x > rt.n || y < 1 || y > rt.n)
        throw NodeOutOfRange("incident_rate_sum: node outside 1.." + std::to_string(rt.n));
    return rt.incident_sum[x] + rt.incident_sum[y];
}

int pair_state_index(int n, int x, int y) {
    if (x < 1 || x > n || y < 1 || y > n)
        throw NodeOutOfRange("pair state outside 1.." + std::to_string(n));
    if (x == y) return x - 1;
    return n + (x - 1) * (n - 1) + (y - 1) - (y > x ? 1 : 0);
}

std::pair<int, int> pair_state_nodes(int n, int idx) {
    if (idx < 0 || idx >= n * n) throw NodeOutOfRange("pair state index outside 0..n^2-1");
    if (idx < n) return {idx + 1, idx + 1};
    int off = idx - n;
    int x = off / (n - 1) + 1;
    int y = off % (n - 1) + 1;
    if (y >= x) ++y;
    return {x, y};
}

Matrix pair_jump_matrix(const Graph& g) {
    int n = g.node_count();
    if (n < 2) throw std::invalid_argument("pair_jump_matrix: need at least two nodes");
    auto rt = metropolis_rates(g, false);

    Matrix q(n * n, n * n);
    for (int x = 1; x <= n; ++x) {
        for (int y = 1; y <= n; ++y) {
            int row = pair_state_index(n, x, y);
            double lam = incident_rate_sum(rt, x, y);
            for (int r : g.neighbors(x)) q(row, pair_state_index(n, r, y)) += rt.rate(x, r) / lam;
            for (int w : g.neighbors(y)) q(row, pair_state_index(n, x, w)) += rt.rate(y, w) / lam;
        }
    }
    return q;
}

AbsorbingSpectrum absorbing_spectrum(const Graph& g) {
    int n = g.node_count();
    if (n < 2) throw std::invalid_argument("absorbing_spectrum: need at least two nodes");
    auto rt = metropolis_rates(g, true);

    int states = n * n;
    AbsorbingSpectrum out;
    out.full = Matrix(states, states);
    for (int x = 1; x <= n; ++x) out.full(x - 1, x - 1) = 1.0;
    for (int x = 1; x <= n; ++x) {
        for (int y = 1; y <= n; ++y) {
            if (x == y) continue;
            int row = pair_state_index(n, x, y);
            out.full(row, row) = 1.0 - incident_rate_sum(rt, x, y) / n;
            for (int r : g.neighbors(x)) out.full(row, pair_state_index(n, r, y)) += rt.rate(x, r) / n;
            for (int s : g.neighbors(y)) out.full(row, pair_state_index(n, x, s)) += rt.rate(y, s) / n;
        }
    }

    int t = states - n;
    out.transient = Matrix(t, t);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) out.transient(i, j) = out.full(n + i, n + j);

    out.eigenvalues = symmetric_eigenvalues(out.transient);
    out.lambda_min = out.eigenvalues.front();
    out.lambda_max = out.eigenvalues.back();

    Matrix a(t, t);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - out.transient(i, j);
    out.absorb_steps = solve_linear(std::move(a), std::vector<double>(t, 1.0));
    return out;
}

}  // namespace qmc
