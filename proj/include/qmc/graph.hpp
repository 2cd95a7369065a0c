#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qmc {

// Connected simple undirected graph on nodes 1..n.
class Graph {
public:
    // Validates node range, rejects self loops, deduplicates parallel edges,
    // and requires connectivity (BFS from node 1).
    Graph(int n, std::vector<std::pair<int, int>> edges);

    // Text format: first line "n <count>", one "u v" line per edge.
    // Blank lines and lines starting with '#' are ignored.
    static Graph from_file(const std::filesystem::path& file);
    std::string to_text() const;

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int degree(int x) const { return static_cast<int>(neighbors(x).size()); }
    const std::vector<int>& neighbors(int x) const;  // ascending node ids
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }  // u < v, sorted
    bool has_edge(int u, int v) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;  // index 0 unused
};

enum class Family { Path, Cycle, Complete, Star, ErdosRenyi };

Family family_from_string(const std::string& s);
std::string family_name(Family f);

// Deterministic for fixed arguments. The seed only matters for ErdosRenyi,
// which redraws until connected (up to 1000 attempts, then GenerationFailed).
// Star graphs put the hub at node 1.
Graph generate(Family f, int n, std::uint64_t seed = 0, double edge_prob = 0.5);

// Piecewise-constant graph process: frame k is active on [k, k+1). A cycling
// schedule repeats its frame list forever; otherwise the last frame persists.
class Schedule {
public:
    // a default-constructed schedule is an assignable placeholder; runners
    // reject it (frame_count() == 0)
    Schedule() = default;
    explicit Schedule(Graph single_frame);
    Schedule(std::vector<Graph> frames, bool cycle);

    // JSON file {"cycle": bool, "frames": ["a.g", ...]}; frame paths are
    // resolved relative to the schedule file's directory.
    static Schedule from_file(const std::filesystem::path& file);

    int frame_index_at(double t) const;  // t >= 0
    const Graph& graph_at(double t) const { return frames_[frame_index_at(t)]; }
    const Graph& frame(int k) const { return frames_[k]; }
    int frame_count() const { return static_cast<int>(frames_.size()); }
    bool cycles() const { return cycle_; }
    int node_count() const { return frames_.empty() ? 0 : frames_[0].node_count(); }

private:
    std::vector<Graph> frames_;
    bool cycle_ = false;
};

}  // namespace qmc
