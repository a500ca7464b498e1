#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spines/rational.hpp"
#include "spines/torus_graph.hpp"

namespace spines {

/// Small explicit undirected simple graph on vertices 0..n-1.
class SimpleGraph {
public:
    SimpleGraph(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges);
    static SimpleGraph from_torus(const TorusGraphSpec& spec);

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    const std::vector<std::pair<VertexId, VertexId>>& edges() const noexcept { return edges_; }
    const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }

private:
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

/**
 * Flow network certifying vertex expansion c of Y = V - U.
 *
 * Nodes: source, sink, a copy y' for every y in Y and a copy v'' for every v
 * in V. Arcs: (s, y') with capacity 1 + c, (y', y'') and (y', v'') for every
 * edge yv, and (v'', t), all of capacity 1.
 */
struct DirichletFlowNetwork {
    enum class ArcKind : std::uint8_t { Source, Self, Edge, Sink };

    struct Arc {
        std::size_t from;
        std::size_t to;
        Rational capacity;
        ArcKind kind;
        VertexId tail;  ///< graph vertex of the tail copy (unused for Source)
        VertexId head;  ///< graph vertex of the head copy (unused for Sink)
    };

    static constexpr std::size_t kSource = 0;
    static constexpr std::size_t kSink = 1;

    const SimpleGraph* graph = nullptr;
    VertexSet U;
    std::vector<VertexId> Y;
    Rational c;
    std::vector<std::size_t> prime_node;         ///< y -> node of y', or npos for y in U
    std::vector<std::size_t> double_prime_node;  ///< v -> node of v''
    std::size_t node_count = 0;
    std::vector<Arc> arcs;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

DirichletFlowNetwork build_network(const SimpleGraph& graph, const VertexSet& U, const Rational& c);

struct FlowResult {
    Rational value;
    std::vector<Rational> arc_flow;  ///< parallel to network.arcs
};

/**
 * Exact maximum flow. Capacities are scaled to integers by the denominator of
 * c and Dinic's algorithm runs on 64-bit integers; arcs are explored in
 * insertion order, so the returned flow is deterministic.
 */
FlowResult max_flow(const DirichletFlowNetwork& net);

struct OrientedWeight {
    VertexId from;
    VertexId to;
    Rational h;
};

struct OrientationChecks {
    bool out_sum_ok = false;       ///< sum_j h(i,j) <= 1 + c for i in Y
    bool in_sum_ok = false;        ///< sum_j h(j,i) <= 1 for all i
    bool difference_ok = false;    ///< out - in >= c for i in Y
    bool one_direction_ok = false; ///< each edge carries weight in one direction only
    bool all() const noexcept { return out_sum_ok && in_sum_ok && difference_ok && one_direction_ok; }
};

struct OrientationWeights {
    std::vector<OrientedWeight> edges;  ///< one entry per graph edge, in graph edge order
    OrientationChecks checks;

    Rational out_sum(VertexId v) const;
    Rational in_sum(VertexId v) const;
};

/// Cancels antiparallel flow and reads off h; throws NotSaturated if value < (1 + c)|Y|.
OrientationWeights extract_orientation(const DirichletFlowNetwork& net, const FlowResult& flow);

OrientationChecks check_orientation(const SimpleGraph& graph, const VertexSet& U, const Rational& c,
                                    const OrientationWeights& h);

template <class T>
struct InequalityReport {
    T lhs131;  ///< sum h^2 (x_i + x_j)^2
    T rhs131;  ///< (4 + 2c^2) sum x^2
    T lhs132;  ///< sum h (x_i^2 - x_j^2)
    T rhs132;  ///< c sum x^2
    bool pass = false;
};

/// Floating-point x; each side compared with relative tolerance 1e-12.
InequalityReport<double> verify_inequalities(const SimpleGraph& graph, const VertexSet& U, const Rational& c,
                                             const OrientationWeights& h, std::span<const double> x);
/// Rational x; compared exactly.
InequalityReport<Rational> verify_inequalities(const SimpleGraph& graph, const VertexSet& U, const Rational& c,
                                               const OrientationWeights& h, std::span<const Rational> x);

/// min over nonempty W subset of V - U of |N(W) - W| / |W|, by Gray-code enumeration.
inline constexpr std::size_t kMaxCertifiedFree = 22;
Rational certified_c(const SimpleGraph& graph, const VertexSet& U);

}  // namespace spines
