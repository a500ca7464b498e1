#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spines/error.hpp"

namespace spines {

using VertexId = std::uint32_t;

/// Which power of the cycle C_m: sum-power (C_m^d)_1 or AND-power (C_m^d)_inf.
enum class Power { One, Inf };

const char* to_string(Power p) noexcept;
Power parse_power(const std::string& s);

/// Largest vertex count accepted for a materialized torus graph.
inline constexpr std::size_t kMaxVertices = std::size_t{1} << 26;
/// Largest dimension accepted (m >= 3 and kMaxVertices imply d <= 16).
inline constexpr int kMaxDim = 16;
/// The AND-power stores its 3^d - 1 step vectors, so its dimension is capped.
inline constexpr int kMaxInfDim = 10;

/// A vertex of the torus as residues in {0, ..., m-1}.
struct TorusVertex {
    std::vector<int> coords;

    friend bool operator==(const TorusVertex&, const TorusVertex&) = default;
};

/// Per-coordinate step in {-1, 0, +1} taking one endpoint of an edge to the other.
using Displacement = std::vector<int>;

/**
 * Implicit description of (C_m^d)_1 or (C_m^d)_inf.
 *
 * Vertices are linear indices in [0, m^d) with coordinate 0 least significant.
 * Edges are never stored; neighbours are generated from a fixed table of step
 * vectors.
 */
class TorusGraphSpec {
public:
    TorusGraphSpec(int m, int d, Power power);

    int m() const noexcept { return m_; }
    int d() const noexcept { return d_; }
    Power power() const noexcept { return power_; }
    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t degree() const noexcept { return steps_.size() / static_cast<std::size_t>(d_); }
    std::size_t edge_count() const noexcept { return vertex_count_ * degree() / 2; }

    VertexId encode(const TorusVertex& v) const;
    TorusVertex decode(VertexId id) const;
    bool valid(const TorusVertex& v) const noexcept;

    /// Step vector number k, entries in {-1, 0, +1}.
    std::span<const std::int8_t> step(std::size_t k) const noexcept {
        return {steps_.data() + k * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }

    /// Neighbour of v along step k.
    VertexId neighbor(VertexId v, std::size_t k) const noexcept;

    /// Calls f(neighbour, step_index) for every neighbour of v, in step-table order.
    template <class F>
    void for_each_neighbor(VertexId v, F&& f) const {
        if (is_interior(v)) {
            for (std::size_t k = 0; k < step_delta_.size(); ++k)
                f(static_cast<VertexId>(static_cast<std::int64_t>(v) + step_delta_[k]), k);
        } else {
            for (std::size_t k = 0; k < step_delta_.size(); ++k) f(neighbor(v, k), k);
        }
    }

    /// Calls f(u, v) once per edge with u < v.
    template <class F>
    void for_each_edge(F&& f) const {
        for (VertexId u = 0; u < vertex_count_; ++u)
            for_each_neighbor(u, [&](VertexId v, std::size_t) {
                if (u < v) f(u, v);
            });
    }

    /// Neighbours sorted by linear index.
    std::vector<VertexId> neighbors(VertexId v) const;
    std::vector<TorusVertex> neighbors(const TorusVertex& v) const;

    bool adjacent(VertexId u, VertexId v) const;

    /// Canonical step from u to v; throws NotAnEdge if (u, v) is not an edge.
    Displacement displacement(VertexId u, VertexId v) const;
    Displacement displacement(const TorusVertex& u, const TorusVertex& v) const;

    /// Linear index of v + shift (coordinatewise mod m).
    VertexId translate(VertexId v, VertexId shift) const noexcept;

    std::size_t stride(int s) const noexcept { return strides_[static_cast<std::size_t>(s)]; }
    int coord(VertexId v, int s) const noexcept {
        return static_cast<int>((v / strides_[static_cast<std::size_t>(s)]) % static_cast<std::size_t>(m_));
    }

private:
    bool is_interior(VertexId v) const noexcept;

    int m_;
    int d_;
    Power power_;
    std::size_t vertex_count_;
    std::vector<std::size_t> strides_;
    std::vector<std::int8_t> steps_;
    std::vector<std::int64_t> step_delta_;
};

/// Dense membership set over a fixed universe [0, n).
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe);
    static VertexSet full(std::size_t universe);
    static VertexSet from(std::size_t universe, std::span<const VertexId> members);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool is_full() const noexcept { return size_ == universe_; }

    bool contains(VertexId v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }
    /// Returns true if v was not already present.
    bool insert(VertexId v);
    bool erase(VertexId v);

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);
    VertexSet complement() const;
    bool intersects(const VertexSet& other) const;
    bool subset_of(const VertexSet& other) const;

    std::vector<VertexId> members() const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<VertexId>(w * 64 + static_cast<std::size_t>(b)));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

private:
    void recount();
    void clear_tail();

    std::size_t universe_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Undirected edge stored with u < v.
struct Edge {
    VertexId u;
    VertexId v;

    Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}
    std::uint64_t key() const noexcept { return (std::uint64_t{u} << 32) | v; }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Set of undirected edges, deduplicating on insertion.
class EdgeSet {
public:
    bool insert(Edge e) { return keys_.insert(e.key()).second; }
    bool insert(VertexId a, VertexId b) { return insert(Edge(a, b)); }
    bool contains(VertexId a, VertexId b) const { return keys_.count(Edge(a, b).key()) != 0; }
    std::size_t size() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return keys_.empty(); }
    std::vector<Edge> sorted() const;

private:
    std::unordered_set<std::uint64_t> keys_;
};

/// {w + shift : w in set}, coordinatewise mod m.
VertexSet shift_set(const TorusGraphSpec& spec, const VertexSet& set, VertexId shift);
VertexSet shift_set(const TorusGraphSpec& spec, const VertexSet& set, const TorusVertex& shift);

/// N(W) - W: vertices outside W with a neighbour in W.
VertexSet outer_boundary(const TorusGraphSpec& spec, const VertexSet& set);

/// Number of edges with exactly one endpoint in W.
std::size_t edge_boundary_size(const TorusGraphSpec& spec, const VertexSet& set);

/// |V| = m^d with overflow check against kMaxVertices; throws TooLarge otherwise.
std::size_t checked_vertex_count(int m, int d);

}  // namespace spines
