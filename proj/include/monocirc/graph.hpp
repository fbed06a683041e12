#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace monocirc {

using VertexId = std::uint32_t;

/// Plain adjacency-list digraph with dense vertex ids.
class Digraph {
  public:
    Digraph() = default;
    explicit Digraph(std::size_t vertex_count) : adj_(vertex_count) {}

    VertexId add_vertex();
    void add_edge(VertexId from, VertexId to);

    /// Sorts and deduplicates every successor list.
    void normalize();

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const;
    bool contains(VertexId v) const { return v < adj_.size(); }

    std::span<const VertexId> successors(VertexId v) const { return adj_.at(v); }
    bool has_edge(VertexId from, VertexId to) const;

    bool operator==(const Digraph&) const = default;

  private:
    std::vector<std::vector<VertexId>> adj_;
};

/// Kahn order; nullopt when the graph has a cycle.
std::optional<std::vector<VertexId>> topological_order(const Digraph& g);

}  // namespace monocirc
