#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qmc/errors.hpp"
#include "qmc/graph.hpp"
#include "qmc/linalg.hpp"
#include "qmc/metro.hpp"

using qmc::Graph;
using qmc::Matrix;

namespace {

// Second route to hitting times, via the fundamental matrix of the chain:
// H(x,y) = n * (Z(y,y) - Z(x,y)) with Z = (I - M + J/n)^{-1}.
Matrix hitting_via_fundamental(const Matrix& m) {
    int n = m.rows();
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - m(i, j) + 1.0 / n;
    // invert column by column
    Matrix z(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        auto col = qmc::solve_linear(a, e);
        for (int i = 0; i < n; ++i) z(i, j) = col[i];
    }
    Matrix h(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) h(x, y) = n * (z(y, y) - z(x, y));
    return h;
}

std::vector<Graph> sample_graphs() {
    return {
        qmc::generate(qmc::Family::Path, 5),
        qmc::generate(qmc::Family::Cycle, 6),
        qmc::generate(qmc::Family::Star, 5),
        qmc::generate(qmc::Family::Complete, 4),
        qmc::generate(qmc::Family::ErdosRenyi, 7, 2, 0.5),
        qmc::generate(qmc::Family::ErdosRenyi, 8, 3, 0.35),
    };
}

}  // namespace

TEST_CASE("edge rates on small graphs") {
    // two nodes: single edge at rate 1, self loops 1/2 each, total 2
    auto k2 = qmc::metropolis_rates(qmc::generate(qmc::Family::Complete, 2), true);
    CHECK(k2.rate(1, 2) == doctest::Approx(1.0));
    CHECK(k2.self_rate[1] == doctest::Approx(0.5));
    CHECK(k2.self_rate[2] == doctest::Approx(0.5));
    CHECK(k2.total == doctest::Approx(2.0));

    // path on three nodes: both edges 1/2, self loops (3/4, 1/2, 3/4)
    auto p3 = qmc::metropolis_rates(qmc::generate(qmc::Family::Path, 3), true);
    CHECK(p3.rate(1, 2) == doctest::Approx(0.5));
    CHECK(p3.rate(2, 3) == doctest::Approx(0.5));
    CHECK(p3.rate(1, 3) == 0.0);
    CHECK(p3.rate(2, 1) == doctest::Approx(0.5));  // symmetric lookup
    CHECK(p3.self_rate[1] == doctest::Approx(0.75));
    CHECK(p3.self_rate[2] == doctest::Approx(0.5));
    CHECK(p3.total == doctest::Approx(3.0));

    // star on four nodes: spokes 1/3, hub loop 1/2, leaf loops 5/6
    auto s4 = qmc::metropolis_rates(qmc::generate(qmc::Family::Star, 4), true);
    CHECK(s4.rate(1, 3) == doctest::Approx(1.0 / 3));
    CHECK(s4.self_rate[1] == doctest::Approx(0.5));
    CHECK(s4.self_rate[2] == doctest::Approx(5.0 / 6));
    CHECK(s4.total == doctest::Approx(4.0));

    // without self loops the same edges, no node rates
    auto bare = qmc::metropolis_rates(qmc::generate(qmc::Family::Star, 4), false);
    CHECK(bare.rate(1, 3) == doctest::Approx(1.0 / 3));
    CHECK(bare.self_rate[1] == 0.0);
    CHECK(bare.total == doctest::Approx(1.0));
    CHECK(bare.incident_sum[1] == doctest::Approx(1.0));
    CHECK(bare.incident_sum[2] == doctest::Approx(1.0 / 3));
}

TEST_CASE("self-loop rates make every node tick at rate 1") {
    for (const auto& g : sample_graphs()) {
        auto rt = qmc::metropolis_rates(g, true);
        CHECK(rt.total == doctest::Approx(g.node_count()).epsilon(1e-12));
        for (int x = 1; x <= g.node_count(); ++x) {
            CHECK(rt.self_rate[x] >= -1e-15);
            CHECK(rt.self_rate[x] <= 1.0 + 1e-15);
            // each edge rate split evenly between its endpoints: node share 1
            CHECK(rt.self_rate[x] + rt.incident_sum[x] / 2 ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("transition matrix is symmetric and doubly stochastic") {
    for (const auto& g : sample_graphs()) {
        Matrix m = qmc::metropolis_matrix(g);
        int n = m.rows();
        REQUIRE(n == g.node_count());
        CHECK(m.max_asymmetry() <= 1e-12);
        for (int i = 0; i < n; ++i) {
            double row = 0.0, col = 0.0;
            for (int j = 0; j < n; ++j) {
                CHECK(m(i, j) >= -1e-15);
                row += m(i, j);
                col += m(j, i);
            }
            CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("hitting times on pinned examples") {
    // two nodes: one step either way
    Matrix h2 = qmc::hitting_times(qmc::metropolis_matrix(qmc::generate(qmc::Family::Complete, 2)));
    CHECK(h2(0, 1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(h2(1, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(h2(0, 0) == 0.0);

    // triangle: two steps between any pair
    Matrix h3 = qmc::hitting_times(qmc::metropolis_matrix(qmc::generate(qmc::Family::Complete, 3)));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            CHECK(h3(x, y) == doctest::Approx(x == y ? 0.0 : 2.0).epsilon(1e-10));

    // path on three nodes
    Matrix hp = qmc::hitting_times(qmc::metropolis_matrix(qmc::generate(qmc::Family::Path, 3)));
    double want[3][3] = {{0, 2, 6}, {4, 0, 4}, {6, 2, 0}};
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(hp(x, y) == doctest::Approx(want[x][y]).epsilon(1e-10));

    // star on four nodes: leaf->hub 3, hub->leaf 9, leaf->leaf 12
    Matrix hs = qmc::hitting_times(qmc::metropolis_matrix(qmc::generate(qmc::Family::Star, 4)));
    CHECK(hs(1, 0) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(hs(0, 1) == doctest::Approx(9.0).epsilon(1e-10));
    CHECK(hs(1, 2) == doctest::Approx(12.0).epsilon(1e-10));
}

TEST_CASE("hitting times agree with the fundamental-matrix route") {
    for (const auto& g : sample_graphs()) {
        Matrix m = qmc::metropolis_matrix(g);
        Matrix direct = qmc::hitting_times(m);
        Matrix indirect = hitting_via_fundamental(m);
        for (int x = 0; x < m.rows(); ++x)
            for (int y = 0; y < m.rows(); ++y)
                CHECK(direct(x, y) == doctest::Approx(indirect(x, y)).epsilon(1e-8));
    }
}

TEST_CASE("hitting_times validates its input") {
    CHECK_THROWS_AS(qmc::hitting_times(Matrix(2, 3)), std::invalid_argument);
    Matrix bad(2, 2);
    bad(0, 0) = 0.7;  // rows do not sum to 1
    bad(1, 1) = 1.0;
    CHECK_THROWS_AS(qmc::hitting_times(bad), std::invalid_argument);
}

TEST_CASE("hidden vertex and potential on pinned examples") {
    auto p3 = qmc::analyze_chain(qmc::generate(qmc::Family::Path, 3));
    CHECK(p3.hidden == 1);
    double want[3][3] = {{0, 4, 6}, {4, 2, 4}, {6, 4, 0}};
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            CHECK(p3.potential(x, y) == doctest::Approx(want[x][y]).epsilon(1e-10));

    // star: every leaf reaches every node at least as fast; smallest leaf wins
    auto s4 = qmc::analyze_chain(qmc::generate(qmc::Family::Star, 4));
    CHECK(s4.hidden == 2);

    auto k3 = qmc::analyze_chain(qmc::generate(qmc::Family::Complete, 3));
    CHECK(k3.hidden == 1);

    CHECK_THROWS_AS(qmc::hitting_potential(p3.hitting, 0), qmc::NodeOutOfRange);
    CHECK_THROWS_AS(qmc::hitting_potential(p3.hitting, 4), qmc::NodeOutOfRange);
}

TEST_CASE("potential is symmetric with nonnegative diagonal and pair-averaged drift") {
    for (const auto& g : sample_graphs()) {
        int n = g.node_count();
        auto prof = qmc::analyze_chain(g);
        auto rt = qmc::metropolis_rates(g, false);
        CHECK(prof.potential.max_asymmetry() <= 1e-9);
        for (int x = 0; x < n; ++x) CHECK(prof.potential(x, x) >= -1e-9);

        // on distinct pairs the potential solves the same one-arrival balance
        // equation as twice the expected pair time:
        // Phi(x,y) = 2/Lambda + sum over single-walker moves of (rate/Lambda) Phi
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y) {
                if (x == y) continue;
                double lam = rt.incident_sum[x] + rt.incident_sum[y];
                double acc = 2.0;
                for (int r : g.neighbors(x)) acc += rt.rate(x, r) * prof.potential(r - 1, y - 1);
                for (int s : g.neighbors(y)) acc += rt.rate(y, s) * prof.potential(x - 1, s - 1);
                CHECK(prof.potential(x - 1, y - 1) == doctest::Approx(acc / lam).epsilon(1e-8));
            }
    }
}

TEST_CASE("analyze_chain pieces are mutually consistent") {
    Graph g = qmc::generate(qmc::Family::ErdosRenyi, 6, 11, 0.5);
    auto prof = qmc::analyze_chain(g);
    CHECK(prof.transition == qmc::metropolis_matrix(g));
    CHECK(prof.hitting == qmc::hitting_times(prof.transition));
    CHECK(prof.hidden == qmc::hidden_vertex(prof.hitting));
    CHECK(prof.potential == qmc::hitting_potential(prof.hitting, prof.hidden));
}
