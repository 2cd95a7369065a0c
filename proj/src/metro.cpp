#include "qmc/metro.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmc/errors.hpp"

namespace qmc {

RateTable metropolis_rates(const Graph& g, bool with_self_loops) {
    RateTable rt;
    rt.n = g.node_count();
    rt.self_loops = with_self_loops;
    rt.pair_rate = Matrix(rt.n + 1, rt.n + 1);
    rt.incident_sum.assign(rt.n + 1, 0.0);
    rt.self_rate.assign(rt.n + 1, 0.0);

    for (auto [u, v] : g.edges()) {
        double r = 1.0 / std::max(g.degree(u), g.degree(v));
        rt.edges.push_back({u, v});
        rt.edge_rate.push_back(r);
        rt.pair_rate(u, v) = rt.pair_rate(v, u) = r;
        rt.incident_sum[u] += r;
        rt.incident_sum[v] += r;
        rt.total += r;
    }
    if (with_self_loops) {
        for (int x = 1; x <= rt.n; ++x) {
            rt.self_rate[x] = 1.0 - 0.5 * rt.incident_sum[x];
            rt.total += rt.self_rate[x];
        }
    }
    return rt;
}

Matrix metropolis_matrix(const Graph& g) {
    int n = g.node_count();
    auto rt = metropolis_rates(g, false);
    Matrix m(n, n);
    for (int x = 1; x <= n; ++x) {
        for (int y : g.neighbors(x)) m(x - 1, y - 1) = rt.rate(x, y);
        m(x - 1, x - 1) = 1.0 - rt.incident_sum[x];
    }
    return m;
}

Matrix hitting_times(const Matrix& m) {
    int n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("hitting_times: matrix not square");
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += m(i, j);
        if (std::abs(row - 1.0) > 1e-9)
            throw std::invalid_argument("hitting_times: row " + std::to_string(i) + " does not sum to 1");
    }

    Matrix h(n, n);
    for (int y = 0; y < n; ++y) {
        // unknowns are all nodes except y, in ascending order
        std::vector<int> node;
        node.reserve(n - 1);
        for (int x = 0; x < n; ++x)
            if (x != y) node.push_back(x);
        int k = n - 1;
        Matrix a(k, k);
        std::vector<double> b(k, 1.0);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                a(r, c) = (r == c ? 1.0 : 0.0) - m(node[r], node[c]);
        auto sol = solve_linear(std::move(a), std::move(b));
        for (int r = 0; r < k; ++r) h(node[r], y) = sol[r];
    }
    return h;
}

int hidden_vertex(const Matrix& h, double tol) {
    int n = h.rows();
    for (int theta = 0; theta < n; ++theta) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            if (h(theta, x) > h(x, theta) + tol) ok = false;
        if (ok) return theta + 1;
    }
    throw NoHiddenVertex("no vertex has uniformly dominated outbound hitting times");
}

Matrix hitting_potential(const Matrix& h, int theta) {
    int n = h.rows();
    if (theta < 1 || theta > n) throw NodeOutOfRange("theta outside 1.." + std::to_string(n));
    int t = theta - 1;
    Matrix phi(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) phi(x, y) = h(x, y) + h(y, t) - h(t, y);
    return phi;
}

ChainProfile analyze_chain(const Graph& g) {
    ChainProfile p;
    p.transition = metropolis_matrix(g);
    p.hitting = hitting_times(p.transition);
    p.hidden = hidden_vertex(p.hitting);
    p.potential = hitting_potential(p.hitting, p.hidden);
    return p;
}

}  // namespace qmc
