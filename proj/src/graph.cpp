#include "monocirc/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace monocirc {

VertexId Digraph::add_vertex() {
    adj_.emplace_back();
    return static_cast<VertexId>(adj_.size() - 1);
}

void Digraph::add_edge(VertexId from, VertexId to) {
    if (!contains(from) || !contains(to)) {
        throw std::out_of_range("Digraph::add_edge: unknown vertex");
    }
    adj_[from].push_back(to);
}

void Digraph::normalize() {
    for (auto& succ : adj_) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
}

std::size_t Digraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& succ : adj_) total += succ.size();
    return total;
}

bool Digraph::has_edge(VertexId from, VertexId to) const {
    const auto& succ = adj_.at(from);
    return std::find(succ.begin(), succ.end(), to) != succ.end();
}

std::optional<std::vector<VertexId>> topological_order(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> indegree(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId s : g.successors(v)) ++indegree[s];
    }
    std::vector<VertexId> order;
    order.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        if (indegree[v] == 0) order.push_back(v);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (VertexId s : g.successors(order[head])) {
            if (--indegree[s] == 0) order.push_back(s);
        }
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

}  // namespace monocirc
