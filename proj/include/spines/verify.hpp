#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spines/cheeger.hpp"
#include "spines/torus_graph.hpp"

namespace spines {

/// A closed walk with nonzero winding; cycle.front() is not repeated at the end.
struct WindingWitness {
    std::vector<VertexId> cycle;
    std::vector<long long> winding;
};

/// Vertices and edges deleted from the torus graph.
struct Removal {
    EdgeSet edges;
    VertexSet vertices;
};

/// Residual graph after deleting removed vertices (with their edges) and removed edges.
class ResidualGraph {
public:
    ResidualGraph(const TorusGraphSpec& spec, const EdgeSet* removed_edges, const VertexSet* removed_vertices);

    const TorusGraphSpec& spec() const noexcept { return spec_; }
    bool has_vertex(VertexId v) const { return !removed_vertices_ || !removed_vertices_->contains(v); }
    bool has_edge(VertexId u, VertexId v) const {
        return has_vertex(u) && has_vertex(v) && (!removed_edges_ || !removed_edges_->contains(u, v));
    }

private:
    const TorusGraphSpec& spec_;
    const EdgeSet* removed_edges_;
    const VertexSet* removed_vertices_;
};

/**
 * Lifts every residual component to Z^d by breadth-first search (potential of
 * the root is 0, potential(v) = potential(u) + step(u, v) along tree edges).
 * The residual graph has a nontrivial cycle iff some non-tree edge disagrees
 * with the lift; the first disagreement in BFS order is returned as a simple
 * cycle through the lowest common ancestor.
 */
std::optional<WindingWitness> has_nontrivial_cycle(const TorusGraphSpec& spec, const EdgeSet* removed_edges,
                                                   const VertexSet* removed_vertices);

/// Same check restricted to the subgraph induced by `body`.
std::optional<WindingWitness> induced_nontrivial_cycle(const TorusGraphSpec& spec, const VertexSet& body);

struct SpineCheck {
    bool is_spine = false;
    std::optional<WindingWitness> witness;
};

SpineCheck is_spine(const TorusGraphSpec& spec, const EdgeSet& candidate);
SpineCheck is_spine(const TorusGraphSpec& spec, const VertexSet& candidate);

/// Sum of steps around the closed walk divided by m; throws if the walk is not closed in the residual graph.
std::vector<long long> winding_of(const TorusGraphSpec& spec, const std::vector<VertexId>& cycle);
bool witness_is_valid(const TorusGraphSpec& spec, const WindingWitness& w, const EdgeSet* removed_edges,
                      const VertexSet* removed_vertices);

/// Independent oracle: enumerate all simple cycles of the residual graph and test their winding directly.
inline constexpr std::size_t kMaxOracleVertices = 12;
bool cycle_enum_oracle(const TorusGraphSpec& spec, const EdgeSet* removed_edges, const VertexSet* removed_vertices);

struct MinSpineResult {
    std::size_t size = 0;
    std::size_t lower_bound = 0;
    std::uint64_t candidates_checked = 0;
    std::vector<VertexId> witness_vertices;  ///< a minimum spine (Vertex kind)
    std::vector<Edge> witness_edges;         ///< a minimum spine (Edge kind)
};

inline constexpr std::uint64_t kMaxBruteForceCandidates = 10'000'000;

/// Smallest spine by increasing-size exhaustive search, starting at the disjoint-cycle lower bound where known.
MinSpineResult brute_force_min_spine(const TorusGraphSpec& spec, CutKind kind);

struct CycleCoverCheck {
    std::size_t cycle_count = 0;
    bool partitions_edges = false;
    bool all_nontrivial = false;
    std::vector<std::vector<VertexId>> cycles;
    std::vector<std::vector<long long>> windings;
    bool ok() const noexcept { return partitions_edges && all_nontrivial; }
};

/// The d m^{d-1} axis-parallel cycles of the sum-power: checks they partition E and each winds once.
CycleCoverCheck edge_disjoint_cycle_cover_check(const TorusGraphSpec& spec);

}  // namespace spines
