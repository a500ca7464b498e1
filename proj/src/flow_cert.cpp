#include "spines/flow_cert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace spines {

SimpleGraph::SimpleGraph(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges)
    : edges_(std::move(edges)), adjacency_(n) {
    for (auto& [a, b] : edges_) {
        if (a >= n || b >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint outside vertex range");
        if (a == b) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
        if (a > b) std::swap(a, b);
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
        if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
            throw Error(ErrorCode::InvalidArgument, "parallel edges are not allowed");
    }
}

SimpleGraph SimpleGraph::from_torus(const TorusGraphSpec& spec) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    spec.for_each_edge([&](VertexId u, VertexId v) { edges.emplace_back(u, v); });
    std::sort(edges.begin(), edges.end());
    return SimpleGraph(spec.vertex_count(), std::move(edges));
}

DirichletFlowNetwork build_network(const SimpleGraph& graph, const VertexSet& U, const Rational& c) {
    if (c < 0) throw Error(ErrorCode::InvalidArgument, "expansion parameter c must be >= 0");
    if (U.universe() != graph.vertex_count()) throw Error(ErrorCode::InvalidArgument, "U has the wrong universe");

    using Net = DirichletFlowNetwork;
    Net net;
    net.graph = &graph;
    net.U = U;
    net.c = c;
    const std::size_t n = graph.vertex_count();
    net.prime_node.assign(n, Net::npos);
    net.double_prime_node.assign(n, Net::npos);

    std::size_t next = 2;
    for (VertexId v = 0; v < n; ++v)
        if (!U.contains(v)) {
            net.Y.push_back(v);
            net.prime_node[v] = next++;
        }
    for (VertexId v = 0; v < n; ++v) net.double_prime_node[v] = next++;
    net.node_count = next;

    const Rational one(1);
    for (VertexId y : net.Y)
        net.arcs.push_back({Net::kSource, net.prime_node[y], one + c, Net::ArcKind::Source, y, y});
    for (VertexId y : net.Y) {
        net.arcs.push_back({net.prime_node[y], net.double_prime_node[y], one, Net::ArcKind::Self, y, y});
        for (VertexId v : graph.neighbors(y))
            net.arcs.push_back({net.prime_node[y], net.double_prime_node[v], one, Net::ArcKind::Edge, y, v});
    }
    for (VertexId v = 0; v < n; ++v)
        net.arcs.push_back({net.double_prime_node[v], Net::kSink, one, Net::ArcKind::Sink, v, v});
    return net;
}

namespace {

/// Dinic on integer capacities; residual arcs stored in pairs (2i forward, 2i+1 backward).
class Dinic {
public:
    explicit Dinic(std::size_t n) : adj_(n), level_(n), it_(n) {}

    std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
        const std::size_t id = to_.size();
        to_.push_back(to);
        cap_.push_back(cap);
        adj_[from].push_back(id);
        to_.push_back(from);
        cap_.push_back(0);
        adj_[to].push_back(id + 1);
        return id;
    }

    std::int64_t run(std::size_t s, std::size_t t) {
        std::int64_t total = 0;
        while (bfs(s, t)) {
            std::fill(it_.begin(), it_.end(), 0);
            while (std::int64_t pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += pushed;
        }
        return total;
    }

    /// Flow on the forward arc with this id.
    std::int64_t flow(std::size_t id) const { return cap_[id + 1]; }

private:
    bool bfs(std::size_t s, std::size_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t id : adj_[u])
                if (cap_[id] > 0 && level_[to_[id]] < 0) {
                    level_[to_[id]] = level_[u] + 1;
                    q.push(to_[id]);
                }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
        if (u == t) return limit;
        for (std::size_t& i = it_[u]; i < adj_[u].size(); ++i) {
            const std::size_t id = adj_[u][i];
            const std::size_t v = to_[id];
            if (cap_[id] <= 0 || level_[v] != level_[u] + 1) continue;
            if (std::int64_t pushed = dfs(v, t, std::min(limit, cap_[id]))) {
                cap_[id] -= pushed;
                cap_[id ^ 1] += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> to_;
    std::vector<std::int64_t> cap_;
    std::vector<int> level_;
    std::vector<std::size_t> it_;
};

std::int64_t to_int64(const BigInt& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < 0)
        throw Error(ErrorCode::TooLarge, "scaled capacity does not fit in 64 bits");
    return x.convert_to<std::int64_t>();
}

}  // namespace

FlowResult max_flow(const DirichletFlowNetwork& net) {
    const BigInt scale = boost::multiprecision::denominator(net.c);
    Dinic dinic(net.node_count);
    std::vector<std::size_t> ids;
    ids.reserve(net.arcs.size());
    for (const auto& arc : net.arcs) {
        const Rational scaled = arc.capacity * scale;
        if (boost::multiprecision::denominator(scaled) != 1)
            throw Error(ErrorCode::InvalidArgument, "capacity is not a multiple of 1/denominator(c)");
        ids.push_back(dinic.add_arc(arc.from, arc.to, to_int64(boost::multiprecision::numerator(scaled))));
    }
    const std::int64_t value = dinic.run(DirichletFlowNetwork::kSource, DirichletFlowNetwork::kSink);

    FlowResult result;
    result.value = Rational(BigInt(value), scale);
    result.arc_flow.reserve(ids.size());
    for (std::size_t id : ids) result.arc_flow.emplace_back(BigInt(dinic.flow(id)), scale);
    return result;
}

Rational OrientationWeights::out_sum(VertexId v) const {
    Rational sum = 0;
    for (const auto& e : edges)
        if (e.from == v) sum += e.h;
    return sum;
}

Rational OrientationWeights::in_sum(VertexId v) const {
    Rational sum = 0;
    for (const auto& e : edges)
        if (e.to == v) sum += e.h;
    return sum;
}

OrientationWeights extract_orientation(const DirichletFlowNetwork& net, const FlowResult& flow) {
    using Net = DirichletFlowNetwork;
    const Rational target = (1 + net.c) * static_cast<long long>(net.Y.size());
    if (flow.value < target)
        throw Error(ErrorCode::NotSaturated, "max flow " + to_string(flow.value) + " < (1+c)|Y| = " +
                                                 to_string(target) + "; some W in Y expands by less than c");
    if (flow.arc_flow.size() != net.arcs.size()) throw Error(ErrorCode::InvalidArgument, "flow does not match network");

    std::vector<Rational> f = flow.arc_flow;
    std::map<std::pair<VertexId, VertexId>, std::size_t> edge_arc;
    std::vector<std::size_t> source_arc(net.graph->vertex_count(), Net::npos);
    std::vector<std::size_t> sink_arc(net.graph->vertex_count(), Net::npos);
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const auto& arc = net.arcs[a];
        switch (arc.kind) {
            case Net::ArcKind::Edge: edge_arc[{arc.tail, arc.head}] = a; break;
            case Net::ArcKind::Source: source_arc[arc.tail] = a; break;
            case Net::ArcKind::Sink: sink_arc[arc.tail] = a; break;
            case Net::ArcKind::Self: break;
        }
    }

    // Cancel antiparallel flow on (i', j'') / (j', i''), keeping out(i') - in(i'') unchanged.
    for (const auto& [i, j] : net.graph->edges()) {
        const auto ij = edge_arc.find({i, j});
        const auto ji = edge_arc.find({j, i});
        if (ij == edge_arc.end() || ji == edge_arc.end()) continue;
        const Rational common = std::min(f[ij->second], f[ji->second]);
        if (common == 0) continue;
        f[ij->second] -= common;
        f[ji->second] -= common;
        f[source_arc[i]] -= common;
        f[sink_arc[j]] -= common;
        f[source_arc[j]] -= common;
        f[sink_arc[i]] -= common;
    }

    OrientationWeights out;
    out.edges.reserve(net.graph->edges().size());
    for (const auto& [i, j] : net.graph->edges()) {
        const auto ij = edge_arc.find({i, j});
        const auto ji = edge_arc.find({j, i});
        const Rational fij = ij == edge_arc.end() ? Rational(0) : f[ij->second];
        const Rational fji = ji == edge_arc.end() ? Rational(0) : f[ji->second];
        if (fij > 0)
            out.edges.push_back({i, j, fij});
        else if (fji > 0)
            out.edges.push_back({j, i, fji});
        else
            out.edges.push_back({std::min(i, j), std::max(i, j), Rational(0)});
    }
    out.checks = check_orientation(*net.graph, net.U, net.c, out);
    return out;
}

OrientationChecks check_orientation(const SimpleGraph& graph, const VertexSet& U, const Rational& c,
                                    const OrientationWeights& h) {
    const std::size_t n = graph.vertex_count();
    std::vector<Rational> out(n), in(n);
    OrientationChecks checks;
    checks.one_direction_ok = h.edges.size() == graph.edges().size();
    std::map<std::pair<VertexId, VertexId>, int> seen;
    for (const auto& e : h.edges) {
        if (e.h < 0 || e.h > 1) checks.one_direction_ok = false;
        out[e.from] += e.h;
        in[e.to] += e.h;
        const auto key = std::minmax(e.from, e.to);
        if (++seen[{key.first, key.second}] > 1) checks.one_direction_ok = false;
    }
    checks.out_sum_ok = checks.in_sum_ok = checks.difference_ok = true;
    for (VertexId v = 0; v < n; ++v) {
        if (in[v] > 1) checks.in_sum_ok = false;
        if (U.contains(v)) continue;
        if (out[v] > 1 + c) checks.out_sum_ok = false;
        if (out[v] - in[v] < c) checks.difference_ok = false;
    }
    return checks;
}

namespace {

template <class T>
InequalityReport<T> evaluate_inequalities(const SimpleGraph& graph, const VertexSet& U, const T& c,
                                          const OrientationWeights& h, std::span<const T> x,
                                          auto&& to_t) {
    if (x.size() != graph.vertex_count()) throw Error(ErrorCode::InvalidArgument, "x has the wrong length");
    for (VertexId v = 0; v < x.size(); ++v)
        if (U.contains(v) && x[v] != 0)
            throw Error(ErrorCode::DirichletViolation, "x is nonzero on U at vertex " + std::to_string(v));

    InequalityReport<T> r{T(0), T(0), T(0), T(0), false};
    T norm = 0;
    for (const auto& xi : x) norm += xi * xi;
    for (const auto& e : h.edges) {
        const T w = to_t(e.h);
        const T sum = x[e.from] + x[e.to];
        r.lhs131 += w * w * sum * sum;
        r.lhs132 += w * (x[e.from] * x[e.from] - x[e.to] * x[e.to]);
    }
    r.rhs131 = (T(4) + T(2) * c * c) * norm;
    r.rhs132 = c * norm;
    return r;
}

}  // namespace

InequalityReport<double> verify_inequalities(const SimpleGraph& graph, const VertexSet& U, const Rational& c,
                                             const OrientationWeights& h, std::span<const double> x) {
    auto r = evaluate_inequalities<double>(graph, U, to_double(c), h, x, [](const Rational& q) { return to_double(q); });
    constexpr double tol = 1e-12;
    const bool ok131 = r.lhs131 <= r.rhs131 + tol * std::max(std::abs(r.lhs131), std::abs(r.rhs131));
    const bool ok132 = r.lhs132 >= r.rhs132 - tol * std::max(std::abs(r.lhs132), std::abs(r.rhs132));
    r.pass = ok131 && ok132;
    return r;
}

InequalityReport<Rational> verify_inequalities(const SimpleGraph& graph, const VertexSet& U, const Rational& c,
                                               const OrientationWeights& h, std::span<const Rational> x) {
    auto r = evaluate_inequalities<Rational>(graph, U, c, h, x, [](const Rational& q) { return q; });
    r.pass = r.lhs131 <= r.rhs131 && r.lhs132 >= r.rhs132;
    return r;
}

Rational certified_c(const SimpleGraph& graph, const VertexSet& U) {
    const std::size_t n = graph.vertex_count();
    if (U.universe() != n) throw Error(ErrorCode::InvalidArgument, "U has the wrong universe");
    std::vector<VertexId> free;
    for (VertexId v = 0; v < n; ++v)
        if (!U.contains(v)) free.push_back(v);
    if (free.empty()) throw Error(ErrorCode::InvalidArgument, "V - U is empty; expansion is undefined");
    if (free.size() > kMaxCertifiedFree)
        throw Error(ErrorCode::TooLarge, "|V - U| = " + std::to_string(free.size()) + " exceeds the exhaustive cap of " +
                                             std::to_string(kMaxCertifiedFree));

    // Gray-code walk over subsets of V - U; touch[u] = #neighbours of u in W.
    std::vector<std::uint32_t> touch(n, 0);
    std::vector<char> in_w(n, 0);
    std::size_t size = 0;
    std::size_t outer = 0;
    bool have_best = false;
    std::size_t best_num = 0, best_den = 1;

    auto add = [&](VertexId v) {
        if (touch[v] > 0) --outer;
        in_w[v] = 1;
        ++size;
        for (VertexId u : graph.neighbors(v))
            if (touch[u]++ == 0 && !in_w[u]) ++outer;
    };
    auto remove = [&](VertexId v) {
        in_w[v] = 0;
        --size;
        for (VertexId u : graph.neighbors(v))
            if (--touch[u] == 0 && !in_w[u]) --outer;
        if (touch[v] > 0) ++outer;
    };

    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(step));
        const VertexId v = free[bit];
        if (in_w[v])
            remove(v);
        else
            add(v);
        if (size == 0) continue;
        if (!have_best || outer * best_den < best_num * size) {
            best_num = outer;
            best_den = size;
            have_best = true;
        }
    }
    return Rational(best_num, best_den);
}

}  // namespace spines
