#include "qmc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "qmc/errors.hpp"
#include "qmc/rng.hpp"

namespace qmc {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n_ < 1) throw NodeOutOfRange("graph needs at least one node, got " + std::to_string(n_));
    for (auto& [u, v] : edges) {
        if (u < 1 || u > n_ || v < 1 || v > n_)
            throw NodeOutOfRange("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") outside 1.." + std::to_string(n_));
        if (u == v) throw SelfLoopRejected("self loop at node " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adj_.assign(n_ + 1, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    std::vector<char> seen(n_ + 1, 0);
    std::queue<int> q;
    q.push(1);
    seen[1] = 1;
    int reached = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : adj_[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                q.push(y);
            }
    }
    if (reached != n_) throw DisconnectedGraph("graph is not connected (reached " +
                                               std::to_string(reached) + " of " + std::to_string(n_) + ")");
}

const std::vector<int>& Graph::neighbors(int x) const {
    if (x < 1 || x > n_) throw NodeOutOfRange("node " + std::to_string(x) + " outside 1.." + std::to_string(n_));
    return adj_[x];
}

bool Graph::has_edge(int u, int v) const {
    if (u < 1 || u > n_ || v < 1 || v > n_) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

Graph Graph::from_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open graph file: " + file.string());

    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        std::istringstream rest;
        if (n < 0) {
            int count;
            if (first != "n" || !(ls >> count))
                throw ParseError(file.string() + ":" + std::to_string(lineno) +
                                 ": expected header line \"n <count>\"");
            n = count;
            rest.swap(ls);
        } else {
            int u, v;
            std::istringstream es(line);
            if (!(es >> u >> v))
                throw ParseError(file.string() + ":" + std::to_string(lineno) +
                                 ": expected edge line \"u v\"");
            edges.push_back({u, v});
            rest.swap(es);
        }
        std::string extra;
        if (rest >> extra && extra[0] != '#')
            throw ParseError(file.string() + ":" + std::to_string(lineno) + ": trailing tokens");
    }
    if (n < 0) throw ParseError(file.string() + ": missing header line \"n <count>\"");
    return Graph(n, std::move(edges));
}

std::string Graph::to_text() const {
    std::string out = "n " + std::to_string(n_) + "\n";
    for (auto [u, v] : edges_) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Family family_from_string(const std::string& s) {
    if (s == "path") return Family::Path;
    if (s == "cycle") return Family::Cycle;
    if (s == "complete") return Family::Complete;
    if (s == "star") return Family::Star;
    if (s == "erdos_renyi") return Family::ErdosRenyi;
    throw std::invalid_argument("unknown graph family: " + s);
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Path: return "path";
        case Family::Cycle: return "cycle";
        case Family::Complete: return "complete";
        case Family::Star: return "star";
        case Family::ErdosRenyi: return "erdos_renyi";
    }
    return "?";
}

Graph generate(Family f, int n, std::uint64_t seed, double edge_prob) {
    if (n < 2) throw GenerationFailed("family graphs need n >= 2, got " + std::to_string(n));
    std::vector<std::pair<int, int>> edges;
    switch (f) {
        case Family::Path:
            for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
            return Graph(n, std::move(edges));
        case Family::Cycle:
            for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
            edges.push_back({n, 1});
            return Graph(n, std::move(edges));
        case Family::Complete:
            for (int u = 1; u <= n; ++u)
                for (int v = u + 1; v <= n; ++v) edges.push_back({u, v});
            return Graph(n, std::move(edges));
        case Family::Star:
            for (int k = 2; k <= n; ++k) edges.push_back({1, k});
            return Graph(n, std::move(edges));
        case Family::ErdosRenyi: {
            Rng rng(stream_seed(seed, 0));
            for (int attempt = 0; attempt < 1000; ++attempt) {
                edges.clear();
                for (int u = 1; u <= n; ++u)
                    for (int v = u + 1; v <= n; ++v)
                        if (rng.uniform01() < edge_prob) edges.push_back({u, v});
                try {
                    return Graph(n, edges);
                } catch (const DisconnectedGraph&) {
                }
            }
            throw GenerationFailed("no connected Erdos-Renyi sample in 1000 attempts (n=" +
                                   std::to_string(n) + ", p=" + std::to_string(edge_prob) + ")");
        }
    }
    throw GenerationFailed("unreachable family");
}

Schedule::Schedule(Graph single_frame) : cycle_(false) { frames_.push_back(std::move(single_frame)); }

Schedule::Schedule(std::vector<Graph> frames, bool cycle) : frames_(std::move(frames)), cycle_(cycle) {
    if (frames_.empty()) throw std::invalid_argument("schedule needs at least one frame");
    for (const auto& g : frames_)
        if (g.node_count() != frames_[0].node_count())
            throw std::invalid_argument("schedule frames must share the node count");
}

int Schedule::frame_index_at(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("schedule time must be >= 0");
    auto k = static_cast<long long>(std::floor(t));
    auto len = static_cast<long long>(frames_.size());
    if (cycle_) return static_cast<int>(k % len);
    return static_cast<int>(std::min(k, len - 1));
}

Schedule Schedule::from_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open schedule file: " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("frames") || !j["frames"].is_array() || j["frames"].empty())
        throw ParseError(file.string() + ": expected {\"cycle\": bool, \"frames\": [paths...]}");
    bool cycle = j.value("cycle", false);
    std::vector<Graph> frames;
    auto base = file.parent_path();
    for (const auto& entry : j["frames"]) {
        if (!entry.is_string()) throw ParseError(file.string() + ": frame entries must be path strings");
        std::filesystem::path p = entry.get<std::string>();
        if (p.is_relative()) p = base / p;
        frames.push_back(Graph::from_file(p));
    }
    try {
        return Schedule(std::move(frames), cycle);
    } catch (const std::invalid_argument& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
}

}  // namespace qmc
