#pragma once

#include "gmip/rational.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmip {

using NodeId = int;

struct Edge
{
    NodeId u = 0;
    NodeId v = 0;
    Rational w = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

enum class Directedness { undirected, directed };

/// Immutable weighted graph on nodes 1..n.
///
/// Undirected edges are stored as u <= v; directed arcs keep their orientation.
/// Self-loops are only accepted when the graph is built as a target graph.
class Graph
{
public:
    Graph() = default;

    Graph(int n, Directedness dir, std::vector<Edge> edges, bool self_loops_allowed = false)
        : n_(n), directed_(dir == Directedness::directed), self_loops_allowed_(self_loops_allowed)
    {
        if (n < 0) throw std::invalid_argument("negative node count");
        index_.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), -1);
        for (auto& e : edges) {
            if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
                throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + " " +
                                            std::to_string(e.v));
            if (e.u == e.v && (!self_loops_allowed || directed_))
                throw std::invalid_argument("self-loop at node " + std::to_string(e.u) + " not allowed");
            if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
        }
        std::sort(edges.begin(), edges.end(),
                  [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            if (slot(e.u, e.v) != -1)
                throw std::invalid_argument("parallel edge " + std::to_string(e.u) + " " + std::to_string(e.v));
            slot(e.u, e.v) = static_cast<int>(i);
            if (!directed_) slot(e.v, e.u) = static_cast<int>(i);
        }
        edges_ = std::move(edges);
    }

    static Graph undirected(int n, const std::vector<std::pair<NodeId, NodeId>>& pairs)
    {
        std::vector<Edge> edges;
        for (auto [u, v] : pairs) edges.push_back({u, v, 1});
        return Graph(n, Directedness::undirected, std::move(edges));
    }

    static Graph directed(int n, const std::vector<std::pair<NodeId, NodeId>>& arcs)
    {
        std::vector<Edge> edges;
        for (auto [u, v] : arcs) edges.push_back({u, v, 1});
        return Graph(n, Directedness::directed, std::move(edges));
    }

    static Graph path(int n)
    {
        std::vector<std::pair<NodeId, NodeId>> p;
        for (int i = 1; i < n; ++i) p.emplace_back(i, i + 1);
        return undirected(n, p);
    }

    static Graph cycle(int n)
    {
        auto p = std::vector<std::pair<NodeId, NodeId>>{};
        for (int i = 1; i < n; ++i) p.emplace_back(i, i + 1);
        if (n >= 3) p.emplace_back(n, 1);
        return undirected(n, p);
    }

    static Graph complete(int n)
    {
        std::vector<std::pair<NodeId, NodeId>> p;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) p.emplace_back(i, j);
        return undirected(n, p);
    }

    int node_count() const { return n_; }
    bool is_directed() const { return directed_; }
    bool allows_self_loops() const { return self_loops_allowed_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(NodeId u, NodeId v) const
    {
        if (u < 1 || u > n_ || v < 1 || v > n_) return false;
        return slot(u, v) != -1;
    }

    bool has_self_loop(NodeId u) const { return has_edge(u, u); }

    /// Weight of edge {u,v} (arc (u,v) when directed); throws when absent.
    const Rational& weight(NodeId u, NodeId v) const
    {
        if (!has_edge(u, v))
            throw std::out_of_range("no edge " + std::to_string(u) + " " + std::to_string(v));
        return edges_[static_cast<std::size_t>(slot(u, v))].w;
    }

    /// N(u): adjacent nodes (out-neighbours for digraphs), excluding u itself.
    std::vector<NodeId> neighbors(NodeId u) const
    {
        check_node(u);
        std::vector<NodeId> out;
        for (NodeId v = 1; v <= n_; ++v)
            if (v != u && slot(u, v) != -1) out.push_back(v);
        return out;
    }

    /// N[u] = N(u) + {u}.
    std::vector<NodeId> closed_neighbors(NodeId u) const
    {
        auto out = neighbors(u);
        out.insert(std::lower_bound(out.begin(), out.end(), u), u);
        return out;
    }

    void check_node(NodeId u) const
    {
        if (u < 1 || u > n_) throw std::out_of_range("node id " + std::to_string(u) + " out of range");
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.n_ == b.n_ && a.directed_ == b.directed_ && a.edges_ == b.edges_;
    }

private:
    int& slot(NodeId u, NodeId v) { return index_[static_cast<std::size_t>(u) * (n_ + 1) + v]; }
    int slot(NodeId u, NodeId v) const { return index_[static_cast<std::size_t>(u) * (n_ + 1) + v]; }

    int n_ = 0;
    bool directed_ = false;
    bool self_loops_allowed_ = false;
    std::vector<Edge> edges_;
    std::vector<int> index_;
};

/// Complement as an undirected simple graph. For a digraph, {u,v} is kept
/// iff neither (u,v) nor (v,u) is an arc.
inline Graph complement(const Graph& g)
{
    std::vector<Edge> edges;
    int n = g.node_count();
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId v = u + 1; v <= n; ++v)
            if (!g.has_edge(u, v) && !g.has_edge(v, u)) edges.push_back({u, v, 1});
    return Graph(n, Directedness::undirected, std::move(edges));
}

/// Pairs {u,v} (u < v) whose shortest-path distance is exactly two.
inline std::vector<std::pair<NodeId, NodeId>> distance_two_pairs(const Graph& g)
{
    if (g.is_directed()) throw std::invalid_argument("distance_two_pairs needs an undirected graph");
    int n = g.node_count();
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId s = 1; s <= n; ++s) {
        std::vector<int> dist(static_cast<std::size_t>(n + 1), -1);
        std::deque<NodeId> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            if (dist[u] == 2) continue;
            for (NodeId v : g.neighbors(u))
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        for (NodeId t = s + 1; t <= n; ++t)
            if (dist[t] == 2) out.emplace_back(s, t);
    }
    return out;
}

/// Nodes partitioned into ordered layers with arcs between consecutive layers.
class LayeredGraph
{
public:
    LayeredGraph() = default;

    LayeredGraph(std::vector<std::vector<NodeId>> layers, std::vector<std::pair<NodeId, NodeId>> arcs)
        : layers_(std::move(layers)), arcs_(std::move(arcs))
    {
        int n = 0;
        for (const auto& l : layers_) n += static_cast<int>(l.size());
        layer_of_.assign(static_cast<std::size_t>(n + 1), -1);
        for (std::size_t l = 0; l < layers_.size(); ++l)
            for (NodeId u : layers_[l]) {
                if (u < 1 || u > n) throw std::invalid_argument("layer node id " + std::to_string(u) + " out of range");
                if (layer_of_[u] != -1)
                    throw std::invalid_argument("node " + std::to_string(u) + " appears in two layers");
                layer_of_[u] = static_cast<int>(l);
            }
        std::sort(arcs_.begin(), arcs_.end());
        for (std::size_t i = 0; i < arcs_.size(); ++i) {
            auto [u, v] = arcs_[i];
            if (u < 1 || u > n || v < 1 || v > n) throw std::invalid_argument("arc endpoint out of range");
            if (layer_of_[v] != layer_of_[u] + 1)
                throw std::invalid_argument("arc " + std::to_string(u) + "->" + std::to_string(v) +
                                            " does not span consecutive layers");
            if (i > 0 && arcs_[i - 1] == arcs_[i]) throw std::invalid_argument("parallel arc");
        }
        n_ = n;
    }

    int node_count() const { return n_; }
    int layer_count() const { return static_cast<int>(layers_.size()); }
    const std::vector<std::vector<NodeId>>& layers() const { return layers_; }
    const std::vector<NodeId>& layer(int l) const { return layers_[static_cast<std::size_t>(l)]; }
    int layer_of(NodeId u) const { return layer_of_[u]; }
    const std::vector<std::pair<NodeId, NodeId>>& arcs() const { return arcs_; }

    /// A_l: arcs leaving layer l (0-based).
    std::vector<std::pair<NodeId, NodeId>> arcs_from_layer(int l) const
    {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (auto a : arcs_)
            if (layer_of_[a.first] == l) out.push_back(a);
        return out;
    }

private:
    int n_ = 0;
    std::vector<std::vector<NodeId>> layers_;
    std::vector<std::pair<NodeId, NodeId>> arcs_;
    std::vector<int> layer_of_;
};

} // namespace gmip
