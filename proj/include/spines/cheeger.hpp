#pragma once

#include <vector>

#include "spines/rational.hpp"
#include "spines/spectral.hpp"
#include "spines/torus_graph.hpp"

namespace spines {

enum class CutKind { Edge, Vertex };

const char* to_string(CutKind k) noexcept;
CutKind parse_cut_kind(const std::string& s);

/// e(W, V - W) for Edge, |N(W) - W| for Vertex.
std::size_t boundary(const TorusGraphSpec& spec, const VertexSet& W, CutKind kind);

/**
 * A level set of the squared sine tensor with its boundary.
 *
 * For Edge certificates the bound is sqrt(2 D R) with D the degree and R the
 * Rayleigh quotient of the sine tensor (on the AND-power this is mu) and the
 * comparison is ratio <= bound, which the edge Cheeger argument guarantees.
 * For Vertex certificates the comparison is c/(1+c) <= 2 sqrt(R); nothing
 * guarantees it for level sets, so it is only recorded.
 */
struct CutCertificate {
    VertexSet W;
    CutKind kind = CutKind::Edge;
    std::size_t boundary_size = 0;
    Rational ratio;
    double bound = 0;
    bool bound_satisfied = false;
    double threshold = 0;

    /// The quantity compared with bound: ratio for Edge, c/(1+c) for Vertex.
    Rational compared_value() const;
};

struct SweepRow {
    double threshold;
    std::size_t size;
    std::size_t boundary;
    Rational ratio;
};

struct SweepResult {
    CutCertificate best;
    /// One row per distinct positive level, ascending threshold (so |W| descends).
    std::vector<SweepRow> table;
};

/// Bound a certificate of this kind is compared with on spec.
double certificate_bound(const TorusGraphSpec& spec, CutKind kind);

/**
 * Enumerates the level sets {v : f(v)^2 >= t} for every distinct positive
 * squared value t, maintaining the boundary incrementally, and returns the
 * minimum-ratio level (ties go to the larger set).
 */
SweepResult sweep(const TorusGraphSpec& spec, const TensorProfile& profile, CutKind kind);

std::vector<SweepRow> incremental_sweep_ratio_table(const TorusGraphSpec& spec, const TensorProfile& profile,
                                                    CutKind kind);

/// Level set for threshold t (vertices with squared value >= t, ties within the merge tolerance included).
VertexSet level_set(const TensorProfile& profile, double threshold);

}  // namespace spines
