#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qmc/errors.hpp"
#include "qmc/graph.hpp"

using qmc::Graph;
using qmc::Schedule;

TEST_CASE("graph constructor validates and normalizes") {
    Graph g(3, {{2, 1}, {3, 2}, {1, 2}});  // reversed + duplicate edge
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
    CHECK(g.neighbors(2) == std::vector<int>{1, 3});
    CHECK(g.degree(1) == 1);
    CHECK(g.has_edge(3, 2));
    CHECK_FALSE(g.has_edge(1, 3));

    CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 4}}), qmc::NodeOutOfRange);
    CHECK_THROWS_AS(Graph(3, {{1, 2}, {0, 2}}), qmc::NodeOutOfRange);
    CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 2}}), qmc::SelfLoopRejected);
    CHECK_THROWS_AS(Graph(4, {{1, 2}, {3, 4}}), qmc::DisconnectedGraph);
    CHECK_THROWS_AS(Graph(2, {}), qmc::DisconnectedGraph);
}

TEST_CASE("graph text round trip") {
    Graph g(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    auto p = testutil::write_temp("roundtrip.graph", g.to_text());
    CHECK(Graph::from_file(p) == g);

    auto commented = testutil::write_temp("commented.graph",
                                          "# a cycle\n\nn 3\n1 2 # first\n2 3\n# done\n");
    Graph c = Graph::from_file(commented);
    CHECK(c.node_count() == 3);
    CHECK(c.edge_count() == 2);
}

TEST_CASE("graph file errors carry position info") {
    CHECK_THROWS_AS(Graph::from_file(testutil::temp_dir() / "missing.graph"), qmc::ParseError);
    CHECK_THROWS_AS(Graph::from_file(testutil::write_temp("nohdr.graph", "1 2\n")),
                    qmc::ParseError);
    CHECK_THROWS_AS(Graph::from_file(testutil::write_temp("badedge.graph", "n 3\n1 x\n")),
                    qmc::ParseError);
    CHECK_THROWS_AS(Graph::from_file(testutil::write_temp("extra.graph", "n 3\n1 2 3\n")),
                    qmc::ParseError);
    CHECK_THROWS_AS(Graph::from_file(testutil::write_temp("empty.graph", "\n")), qmc::ParseError);
    CHECK_THROWS_AS(Graph::from_file(testutil::write_temp("hdr2.graph", "n 3 4\n1 2\n")),
                    qmc::ParseError);
}

TEST_CASE("family generation") {
    Graph path = qmc::generate(qmc::Family::Path, 5);
    CHECK(path.edge_count() == 4);
    CHECK(path.degree(1) == 1);
    CHECK(path.degree(3) == 2);

    Graph cycle = qmc::generate(qmc::Family::Cycle, 5);
    CHECK(cycle.edge_count() == 5);
    for (int v = 1; v <= 5; ++v) CHECK(cycle.degree(v) == 2);

    Graph complete = qmc::generate(qmc::Family::Complete, 5);
    CHECK(complete.edge_count() == 10);
    for (int v = 1; v <= 5; ++v) CHECK(complete.degree(v) == 4);

    Graph star = qmc::generate(qmc::Family::Star, 5);
    CHECK(star.edge_count() == 4);
    CHECK(star.degree(1) == 4);  // hub
    for (int v = 2; v <= 5; ++v) CHECK(star.degree(v) == 1);

    CHECK_THROWS_AS(qmc::generate(qmc::Family::Path, 1), qmc::GenerationFailed);
    CHECK_THROWS_AS(qmc::generate(qmc::Family::ErdosRenyi, 0), qmc::GenerationFailed);
}

TEST_CASE("random graphs are deterministic, connected, and respect edge_prob=1") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 99ULL}) {
        Graph a = qmc::generate(qmc::Family::ErdosRenyi, 9, seed, 0.4);
        Graph b = qmc::generate(qmc::Family::ErdosRenyi, 9, seed, 0.4);
        CHECK(a == b);  // connectivity is checked by the constructor
    }
    CHECK(qmc::generate(qmc::Family::ErdosRenyi, 6, 5, 1.0) ==
          qmc::generate(qmc::Family::Complete, 6));
}

TEST_CASE("family names round trip") {
    for (auto f : {qmc::Family::Path, qmc::Family::Cycle, qmc::Family::Complete, qmc::Family::Star,
                   qmc::Family::ErdosRenyi})
        CHECK(qmc::family_from_string(qmc::family_name(f)) == f);
    CHECK_THROWS_AS(qmc::family_from_string("torus"), std::invalid_argument);
}

TEST_CASE("schedule frame selection") {
    Graph p3 = qmc::generate(qmc::Family::Path, 3);
    Graph s3 = qmc::generate(qmc::Family::Star, 3);

    Schedule single(p3);
    CHECK(single.frame_count() == 1);
    CHECK(single.frame_index_at(0.0) == 0);
    CHECK(single.frame_index_at(57.3) == 0);

    Schedule hold({p3, s3}, false);
    CHECK(hold.frame_index_at(0.99) == 0);
    CHECK(hold.frame_index_at(1.0) == 1);
    CHECK(hold.frame_index_at(12.5) == 1);  // last frame persists
    CHECK_FALSE(hold.cycles());

    Schedule cyc({p3, s3}, true);
    CHECK(cyc.frame_index_at(0.5) == 0);
    CHECK(cyc.frame_index_at(1.5) == 1);
    CHECK(cyc.frame_index_at(2.0) == 0);
    CHECK(cyc.frame_index_at(7.25) == 1);
    CHECK(cyc.cycles());
    CHECK(cyc.node_count() == 3);

    CHECK_THROWS_AS(Schedule({}, false), std::invalid_argument);
    CHECK_THROWS_AS(Schedule({p3, qmc::generate(qmc::Family::Path, 4)}, true),
                    std::invalid_argument);
    CHECK_THROWS_AS(cyc.frame_index_at(-0.1), std::invalid_argument);
}

TEST_CASE("schedule file loading") {
    auto dir = testutil::temp_dir();
    testutil::write_temp("frame_a.graph", qmc::generate(qmc::Family::Path, 4).to_text());
    testutil::write_temp("frame_b.graph", qmc::generate(qmc::Family::Star, 4).to_text());
    auto sched_path = testutil::write_temp(
        "sched.json", "{\"cycle\": true, \"frames\": [\"frame_a.graph\", \"frame_b.graph\"]}");

    Schedule s = Schedule::from_file(sched_path);
    CHECK(s.frame_count() == 2);
    CHECK(s.cycles());
    CHECK(s.frame(0) == qmc::generate(qmc::Family::Path, 4));
    CHECK(s.frame(1) == qmc::generate(qmc::Family::Star, 4));

    // cycle defaults to false
    auto hold_path = testutil::write_temp("sched_hold.json", "{\"frames\": [\"frame_a.graph\"]}");
    CHECK_FALSE(Schedule::from_file(hold_path).cycles());

    CHECK_THROWS_AS(Schedule::from_file(dir / "missing.json"), qmc::ParseError);
    CHECK_THROWS_AS(Schedule::from_file(testutil::write_temp("badjson.json", "{")),
                    qmc::ParseError);
    CHECK_THROWS_AS(Schedule::from_file(testutil::write_temp("noframes.json", "{\"cycle\":true}")),
                    qmc::ParseError);
    CHECK_THROWS_AS(
        Schedule::from_file(testutil::write_temp("ghost.json", "{\"frames\":[\"nope.graph\"]}")),
        qmc::ParseError);
}
