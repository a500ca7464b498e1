#include "spines/verify.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace spines {

ResidualGraph::ResidualGraph(const TorusGraphSpec& spec, const EdgeSet* removed_edges,
                             const VertexSet* removed_vertices)
    : spec_(spec), removed_edges_(removed_edges), removed_vertices_(removed_vertices) {
    if (removed_vertices && removed_vertices->universe() != spec.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "removed vertex set has the wrong universe");
}

namespace {

/**
 * BFS lift to Z^d. vertex_ok(v) and edge_ok(u, v, step) describe the residual
 * graph; every edge is examined from both endpoints, which is harmless because
 * tree edges are consistent by construction.
 */
template <class VertexOk, class EdgeOk>
std::optional<WindingWitness> lift(const TorusGraphSpec& spec, VertexOk&& vertex_ok, EdgeOk&& edge_ok) {
    const std::size_t n = spec.vertex_count();
    const auto d = static_cast<std::size_t>(spec.d());
    constexpr VertexId kNone = static_cast<VertexId>(-1);
    std::vector<VertexId> parent(n, kNone);
    std::vector<std::uint32_t> depth(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<std::int32_t> potential(n * d, 0);
    std::queue<VertexId> q;

    for (VertexId root = 0; root < n; ++root) {
        if (seen[root] || !vertex_ok(root)) continue;
        seen[root] = 1;
        q.push(root);
        while (!q.empty()) {
            const VertexId u = q.front();
            q.pop();
            std::optional<WindingWitness> found;
            spec.for_each_neighbor(u, [&](VertexId v, std::size_t k) {
                if (found || !vertex_ok(v) || !edge_ok(u, v, k)) return;
                const auto step = spec.step(k);
                if (!seen[v]) {
                    seen[v] = 1;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    for (std::size_t s = 0; s < d; ++s) potential[v * d + s] = potential[u * d + s] + step[s];
                    q.push(v);
                    return;
                }
                std::vector<long long> gap(d);
                bool consistent = true;
                for (std::size_t s = 0; s < d; ++s) {
                    gap[s] = static_cast<long long>(potential[u * d + s]) + step[s] - potential[v * d + s];
                    consistent &= gap[s] == 0;
                }
                if (consistent) return;

                WindingWitness w;
                for (auto& g : gap) g /= spec.m();
                w.winding = std::move(gap);
                std::vector<VertexId> up_u{u}, up_v{v};
                VertexId a = u, b = v;
                while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
                while (depth[b] > depth[a]) up_v.push_back(b = parent[b]);
                while (a != b) {
                    up_u.push_back(a = parent[a]);
                    up_v.push_back(b = parent[b]);
                }
                // up_u = u .. lca, up_v = v .. lca; cycle runs lca -> u -> v -> (child of lca).
                w.cycle.assign(up_u.rbegin(), up_u.rend());
                w.cycle.insert(w.cycle.end(), up_v.begin(), up_v.end() - 1);
                found = std::move(w);
            });
            if (found) return found;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<WindingWitness> has_nontrivial_cycle(const TorusGraphSpec& spec, const EdgeSet* removed_edges,
                                                   const VertexSet* removed_vertices) {
    const ResidualGraph g(spec, removed_edges, removed_vertices);
    return lift(
        spec, [&](VertexId v) { return g.has_vertex(v); },
        [&](VertexId u, VertexId v, std::size_t) { return !removed_edges || !removed_edges->contains(u, v); });
}

std::optional<WindingWitness> induced_nontrivial_cycle(const TorusGraphSpec& spec, const VertexSet& body) {
    if (body.universe() != spec.vertex_count()) throw Error(ErrorCode::InvalidArgument, "body has the wrong universe");
    return lift(
        spec, [&](VertexId v) { return body.contains(v); }, [](VertexId, VertexId, std::size_t) { return true; });
}

SpineCheck is_spine(const TorusGraphSpec& spec, const EdgeSet& candidate) {
    SpineCheck r;
    r.witness = has_nontrivial_cycle(spec, &candidate, nullptr);
    r.is_spine = !r.witness;
    return r;
}

SpineCheck is_spine(const TorusGraphSpec& spec, const VertexSet& candidate) {
    SpineCheck r;
    r.witness = has_nontrivial_cycle(spec, nullptr, &candidate);
    r.is_spine = !r.witness;
    return r;
}

std::vector<long long> winding_of(const TorusGraphSpec& spec, const std::vector<VertexId>& cycle) {
    if (cycle.size() < 2) throw Error(ErrorCode::InvalidArgument, "a cycle needs at least two vertices");
    std::vector<long long> total(static_cast<std::size_t>(spec.d()), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto step = spec.displacement(cycle[i], cycle[(i + 1) % cycle.size()]);
        for (std::size_t s = 0; s < total.size(); ++s) total[s] += step[s];
    }
    for (auto& t : total) {
        if (t % spec.m() != 0) throw Error(ErrorCode::InvalidArgument, "displacement sum is not a multiple of m");
        t /= spec.m();
    }
    return total;
}

bool witness_is_valid(const TorusGraphSpec& spec, const WindingWitness& w, const EdgeSet* removed_edges,
                      const VertexSet* removed_vertices) {
    const ResidualGraph g(spec, removed_edges, removed_vertices);
    if (w.cycle.size() < 3) return false;
    for (std::size_t i = 0; i < w.cycle.size(); ++i) {
        const VertexId a = w.cycle[i];
        const VertexId b = w.cycle[(i + 1) % w.cycle.size()];
        if (!spec.adjacent(a, b) || !g.has_edge(a, b)) return false;
    }
    const auto winding = winding_of(spec, w.cycle);
    return winding == w.winding && std::any_of(winding.begin(), winding.end(), [](long long x) { return x != 0; });
}

bool cycle_enum_oracle(const TorusGraphSpec& spec, const EdgeSet* removed_edges, const VertexSet* removed_vertices) {
    const ResidualGraph g(spec, removed_edges, removed_vertices);
    std::vector<VertexId> alive;
    for (VertexId v = 0; v < spec.vertex_count(); ++v)
        if (g.has_vertex(v)) alive.push_back(v);
    if (alive.size() > kMaxOracleVertices)
        throw Error(ErrorCode::TooLarge, "cycle enumeration is limited to " + std::to_string(kMaxOracleVertices) +
                                             " residual vertices (got " + std::to_string(alive.size()) + ")");

    const auto d = static_cast<std::size_t>(spec.d());
    std::vector<char> on_path(spec.vertex_count(), 0);
    std::vector<long long> total(d, 0);

    // Depth-first enumeration of simple paths start -> ... using only vertices above start;
    // each simple cycle is met (twice) from its smallest vertex.
    auto dfs = [&](auto&& self, VertexId start, VertexId u, std::size_t length) -> bool {
        bool found = false;
        spec.for_each_neighbor(u, [&](VertexId v, std::size_t k) {
            if (found || !g.has_edge(u, v)) return;
            const auto step = spec.step(k);
            if (v == start) {
                if (length < 3) return;
                for (std::size_t s = 0; s < d; ++s)
                    if (total[s] + step[s] != 0) {
                        found = true;
                        return;
                    }
                return;
            }
            if (v < start || on_path[v]) return;
            on_path[v] = 1;
            for (std::size_t s = 0; s < d; ++s) total[s] += step[s];
            found = self(self, start, v, length + 1);
            for (std::size_t s = 0; s < d; ++s) total[s] -= step[s];
            on_path[v] = 0;
        });
        return found;
    };

    for (VertexId s : alive) {
        on_path[s] = 1;
        const bool found = dfs(dfs, s, s, 1);
        on_path[s] = 0;
        if (found) return true;
    }
    return false;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (unsigned __int128)kMaxBruteForceCandidates * 1000) return static_cast<std::uint64_t>(-1);
    }
    return static_cast<std::uint64_t>(r);
}

/// Advances idx to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

std::size_t int_pow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

MinSpineResult brute_force_min_spine(const TorusGraphSpec& spec, CutKind kind) {
    MinSpineResult result;
    const auto m = static_cast<std::size_t>(spec.m());
    const std::size_t slice = int_pow(m, spec.d() - 1);

    if (kind == CutKind::Edge) {
        std::vector<Edge> edges;
        spec.for_each_edge([&](VertexId u, VertexId v) { edges.emplace_back(u, v); });
        std::sort(edges.begin(), edges.end());
        std::map<std::uint64_t, std::size_t> index;
        for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i].key()] = i;
        // The d m^{d-1} axis cycles are edge-disjoint and nontrivial in both powers.
        result.lower_bound = static_cast<std::size_t>(spec.d()) * slice;

        std::vector<char> removed(edges.size(), 0);
        // Per-vertex edge ids in step order, so the search avoids hashing.
        std::vector<std::size_t> edge_id(spec.vertex_count() * spec.degree());
        for (VertexId u = 0; u < spec.vertex_count(); ++u)
            spec.for_each_neighbor(u, [&](VertexId v, std::size_t k) {
                edge_id[u * spec.degree() + k] = index.at(Edge(u, v).key());
            });

        std::uint64_t budget = 0;
        for (std::size_t k = result.lower_bound; k <= edges.size(); ++k) {
            const std::uint64_t count = binomial(edges.size(), k);
            if (count == static_cast<std::uint64_t>(-1) || budget + count > kMaxBruteForceCandidates)
                throw Error(ErrorCode::TooLarge, "exhaustive spine search would exceed " +
                                                     std::to_string(kMaxBruteForceCandidates) + " candidates");
            budget += count;
            std::vector<std::size_t> idx(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            do {
                ++result.candidates_checked;
                for (auto i : idx) removed[i] = 1;
                const bool spine = !lift(
                    spec, [](VertexId) { return true; },
                    [&](VertexId u, VertexId, std::size_t s) { return !removed[edge_id[u * spec.degree() + s]]; });
                for (auto i : idx) removed[i] = 0;
                if (spine) {
                    result.size = k;
                    for (auto i : idx) result.witness_edges.push_back(edges[i]);
                    return result;
                }
            } while (next_combination(idx, edges.size()));
        }
    } else {
        const std::size_t n = spec.vertex_count();
        // The m^{d-1} lines along coordinate 0 are vertex-disjoint nontrivial cycles.
        result.lower_bound = slice;
        std::vector<char> removed(n, 0);
        std::uint64_t budget = 0;
        for (std::size_t k = result.lower_bound; k <= n; ++k) {
            const std::uint64_t count = binomial(n, k);
            if (count == static_cast<std::uint64_t>(-1) || budget + count > kMaxBruteForceCandidates)
                throw Error(ErrorCode::TooLarge, "exhaustive spine search would exceed " +
                                                     std::to_string(kMaxBruteForceCandidates) + " candidates");
            budget += count;
            std::vector<std::size_t> idx(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            do {
                ++result.candidates_checked;
                for (auto i : idx) removed[i] = 1;
                const bool spine = !lift(
                    spec, [&](VertexId v) { return !removed[v]; }, [](VertexId, VertexId, std::size_t) { return true; });
                for (auto i : idx) removed[i] = 0;
                if (spine) {
                    result.size = k;
                    for (auto i : idx) result.witness_vertices.push_back(static_cast<VertexId>(i));
                    return result;
                }
            } while (next_combination(idx, n));
        }
    }
    throw Error(ErrorCode::InvalidArgument, "no spine found; the full set should always be one");
}

CycleCoverCheck edge_disjoint_cycle_cover_check(const TorusGraphSpec& spec) {
    if (spec.power() != Power::One)
        throw Error(ErrorCode::InvalidArgument, "the axis-cycle partition applies to the sum-power only");
    CycleCoverCheck out;
    std::map<std::uint64_t, int> hits;
    const auto m = static_cast<std::size_t>(spec.m());
    out.all_nontrivial = true;
    for (int s = 0; s < spec.d(); ++s) {
        const std::size_t stride = spec.stride(s);
        for (VertexId base = 0; base < spec.vertex_count(); ++base) {
            if (spec.coord(base, s) != 0) continue;
            std::vector<VertexId> cycle(m);
            for (std::size_t j = 0; j < m; ++j) cycle[j] = static_cast<VertexId>(base + j * stride);
            for (std::size_t j = 0; j < m; ++j) ++hits[Edge(cycle[j], cycle[(j + 1) % m]).key()];
            auto w = winding_of(spec, cycle);
            std::vector<long long> unit(static_cast<std::size_t>(spec.d()), 0);
            unit[static_cast<std::size_t>(s)] = 1;
            if (w != unit) out.all_nontrivial = false;
            out.cycles.push_back(std::move(cycle));
            out.windings.push_back(std::move(w));
        }
    }
    out.cycle_count = out.cycles.size();
    out.partitions_edges = hits.size() == spec.edge_count() &&
                           std::all_of(hits.begin(), hits.end(), [](const auto& kv) { return kv.second == 1; });
    if (out.partitions_edges) {
        spec.for_each_edge([&](VertexId u, VertexId v) {
            if (!hits.count(Edge(u, v).key())) out.partitions_edges = false;
        });
    }
    return out;
}

}  // namespace spines
