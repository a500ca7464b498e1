#include "spines/cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spines {

namespace {

// Squared profile values within this relative distance are treated as one level.
constexpr double kTieTolerance = 1e-12;

}  // namespace

const char* to_string(CutKind k) noexcept { return k == CutKind::Edge ? "edge" : "vertex"; }

CutKind parse_cut_kind(const std::string& s) {
    if (s == "edge") return CutKind::Edge;
    if (s == "vertex") return CutKind::Vertex;
    throw Error(ErrorCode::InvalidArgument, "kind must be 'edge' or 'vertex', got '" + s + "'");
}

std::size_t boundary(const TorusGraphSpec& spec, const VertexSet& W, CutKind kind) {
    if (W.universe() != spec.vertex_count()) throw Error(ErrorCode::InvalidArgument, "vertex set universe mismatch");
    return kind == CutKind::Edge ? edge_boundary_size(spec, W) : outer_boundary(spec, W).size();
}

Rational CutCertificate::compared_value() const {
    if (kind == CutKind::Edge) return ratio;
    return ratio / (1 + ratio);
}

double certificate_bound(const TorusGraphSpec& spec, CutKind kind) {
    const double rayleigh = closed_form_rayleigh(spec);
    if (kind == CutKind::Edge) return std::sqrt(2.0 * static_cast<double>(spec.degree()) * rayleigh);
    return 2.0 * std::sqrt(rayleigh);
}

namespace {

struct Level {
    double threshold;
    std::size_t begin;
    std::size_t end;
};

/// Vertices outside U sorted by decreasing squared value, grouped into tie-merged levels.
std::pair<std::vector<VertexId>, std::vector<Level>> sorted_levels(const TensorProfile& profile) {
    const auto& sq = profile.squared_values();
    std::vector<VertexId> order;
    for (VertexId v = 0; v < sq.size(); ++v)
        if (sq[v] > 0.0) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return sq[a] > sq[b]; });

    std::vector<Level> levels;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double x = sq[order[i]];
        if (!levels.empty() && levels.back().threshold - x <= kTieTolerance * levels.back().threshold) {
            levels.back().threshold = x;
            levels.back().end = i + 1;
        } else {
            levels.push_back({x, i, i + 1});
        }
    }
    return {std::move(order), std::move(levels)};
}

/// Rows in descending-threshold order (the order levels are grown).
std::vector<SweepRow> grow_levels(const TorusGraphSpec& spec, const std::vector<VertexId>& order,
                                  const std::vector<Level>& levels, CutKind kind) {
    std::vector<SweepRow> rows;
    rows.reserve(levels.size());
    std::vector<char> in_w(spec.vertex_count(), 0);
    std::size_t size = 0;

    if (kind == CutKind::Edge) {
        std::int64_t cut = 0;
        const auto degree = static_cast<std::int64_t>(spec.degree());
        for (const auto& level : levels) {
            for (std::size_t i = level.begin; i < level.end; ++i) {
                const VertexId v = order[i];
                std::int64_t inside = 0;
                spec.for_each_neighbor(v, [&](VertexId u, std::size_t) { inside += in_w[u]; });
                cut += degree - 2 * inside;
                in_w[v] = 1;
                ++size;
            }
            const auto b = static_cast<std::size_t>(cut);
            rows.push_back({level.threshold, size, b, Rational(b, size)});
        }
    } else {
        // touch[u] counts neighbours of u inside W; boundary = #{u not in W : touch[u] > 0}.
        std::vector<std::uint32_t> touch(spec.vertex_count(), 0);
        std::size_t outer = 0;
        for (const auto& level : levels) {
            for (std::size_t i = level.begin; i < level.end; ++i) {
                const VertexId v = order[i];
                if (touch[v] > 0) --outer;
                in_w[v] = 1;
                ++size;
                spec.for_each_neighbor(v, [&](VertexId u, std::size_t) {
                    if (touch[u]++ == 0 && !in_w[u]) ++outer;
                });
            }
            rows.push_back({level.threshold, size, outer, Rational(outer, size)});
        }
    }
    return rows;
}

void check_profile(const TorusGraphSpec& spec, const TensorProfile& profile) {
    if (profile.base().m() != spec.m() || profile.d() != spec.d())
        throw Error(ErrorCode::InvalidArgument, "profile does not match the graph's (m, d)");
}

}  // namespace

std::vector<SweepRow> incremental_sweep_ratio_table(const TorusGraphSpec& spec, const TensorProfile& profile,
                                                    CutKind kind) {
    check_profile(spec, profile);
    const auto [order, levels] = sorted_levels(profile);
    auto rows = grow_levels(spec, order, levels, kind);
    std::reverse(rows.begin(), rows.end());
    return rows;
}

VertexSet level_set(const TensorProfile& profile, double threshold) {
    const auto& sq = profile.squared_values();
    VertexSet w(sq.size());
    for (VertexId v = 0; v < sq.size(); ++v)
        if (sq[v] > 0.0 && sq[v] >= threshold) w.insert(v);
    return w;
}

SweepResult sweep(const TorusGraphSpec& spec, const TensorProfile& profile, CutKind kind) {
    check_profile(spec, profile);
    const auto [order, levels] = sorted_levels(profile);
    if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "profile has no positive level");
    auto rows = grow_levels(spec, order, levels, kind);

    // Rows are in growing order; a later row with an equal ratio is a larger set and wins the tie.
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].ratio <= rows[best].ratio) best = i;

    SweepResult result;
    auto& cert = result.best;
    cert.kind = kind;
    cert.W = VertexSet(spec.vertex_count());
    for (std::size_t i = 0; i < levels[best].end; ++i) cert.W.insert(order[i]);
    cert.boundary_size = rows[best].boundary;
    cert.ratio = rows[best].ratio;
    cert.threshold = rows[best].threshold;
    cert.bound = certificate_bound(spec, kind);
    cert.bound_satisfied = rational_le_real(cert.compared_value(), cert.bound);

    std::reverse(rows.begin(), rows.end());
    result.table = std::move(rows);
    return result;
}

}  // namespace spines
