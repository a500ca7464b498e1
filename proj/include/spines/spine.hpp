#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spines/rng.hpp"
#include "spines/torus_graph.hpp"

namespace spines {

struct ShiftTrace {
    std::uint64_t seed = 0;
    std::vector<VertexId> shifts;                ///< v_1, ..., v_s as linear ids
    std::vector<std::size_t> per_shift_contribution;  ///< |E_i| or |B_i|
    std::size_t shifts_used = 0;
};

struct EdgeSpine {
    EdgeSet edges;
    ShiftTrace trace;
    std::size_t total_size = 0;        ///< |union E_i|
    std::size_t contribution_sum = 0;  ///< sum |E_i|
};

struct VertexSpine {
    VertexSet vertices;
    ShiftTrace trace;
};

/// Source of shift vectors; the seeded builders draw uniform residues per coordinate.
using ShiftSource = std::function<VertexId()>;

/// Shift cap 64 m^d / |W| ln(m^d + 1); reaching it raises CoverageCapExceeded.
std::size_t coverage_shift_cap(std::size_t vertex_count, std::size_t body_size);

/// Uniform random vertex of spec (d independent residues, each by rejection sampling).
VertexId random_shift(const TorusGraphSpec& spec, Rng& rng);

/**
 * Random-shift edge spine: W_i = v_i + W until the W_i cover V; E_i holds the
 * edges from W_i minus earlier W_j to vertices outside W_i.
 */
EdgeSpine build_edge_spine(const TorusGraphSpec& spec, const VertexSet& W, std::uint64_t seed);
EdgeSpine build_edge_spine(const TorusGraphSpec& spec, const VertexSet& W, const ShiftSource& next_shift,
                           std::uint64_t seed_label = 0);

/**
 * Random-shift vertex spine: shifts until the closures W_i u N(W_i) cover V;
 * B_i = (N(W_i) - W_i) minus earlier closures. The B_i are disjoint.
 */
VertexSpine build_vertex_spine(const TorusGraphSpec& spec, const VertexSet& W, std::uint64_t seed);
VertexSpine build_vertex_spine(const TorusGraphSpec& spec, const VertexSet& W, const ShiftSource& next_shift,
                               std::uint64_t seed_label = 0);

/// All edges crossing from residue m-1 to residue 0 in some coordinate; size d m^{d-1}.
EdgeSpine trivial_edge_spine(const TorusGraphSpec& spec);
/// All vertices with some coordinate equal to 0; size m^d - (m-1)^d.
VertexSpine trivial_vertex_spine(const TorusGraphSpec& spec);

struct RunStats {
    std::size_t runs = 0;
    double mean_size = 0;
    double std_error = 0;  ///< sample standard deviation / sqrt(runs)
    double bound = 0;
    std::vector<std::size_t> per_run_sizes;
};

RunStats summarize(std::vector<std::size_t> sizes, double bound = 0);

struct MonteCarloResult {
    RunStats spine_size;        ///< |union E_i| or |union B_i|
    RunStats contribution_sum;  ///< sum |E_i| or sum |B_i|
    std::vector<std::size_t> shifts_used;
};

/**
 * Runs the builder for seeds base_seed .. base_seed + runs - 1, verifies every
 * spine (VerificationFailed names the seed) and aggregates in seed order.
 * With jobs > 1 seeds are split across threads; the result does not depend on
 * the job count.
 */
MonteCarloResult monte_carlo_edge(const TorusGraphSpec& spec, const VertexSet& W, std::size_t runs,
                                  std::uint64_t base_seed, unsigned jobs = 1);
MonteCarloResult monte_carlo_vertex(const TorusGraphSpec& spec, const VertexSet& W, std::size_t runs,
                                    std::uint64_t base_seed, unsigned jobs = 1);

}  // namespace spines
