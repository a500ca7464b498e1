#include "spines/torus_graph.hpp"

#include <algorithm>

namespace spines {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotAnEdge: return "NotAnEdge";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::NotSaturated: return "NotSaturated";
        case ErrorCode::DirichletViolation: return "DirichletViolation";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::EmptyBody: return "EmptyBody";
        case ErrorCode::CoverageCapExceeded: return "CoverageCapExceeded";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::DegenerateStrip: return "DegenerateStrip";
        case ErrorCode::CoverageFailed: return "CoverageFailed";
    }
    return "Unknown";
}

const char* to_string(Power p) noexcept { return p == Power::One ? "one" : "inf"; }

Power parse_power(const std::string& s) {
    if (s == "one" || s == "1") return Power::One;
    if (s == "inf" || s == "infinity") return Power::Inf;
    throw Error(ErrorCode::InvalidArgument, "power must be 'one' or 'inf', got '" + s + "'");
}

std::size_t checked_vertex_count(int m, int d) {
    if (m < 3) throw Error(ErrorCode::InvalidArgument, "m must be >= 3 (got " + std::to_string(m) + ")");
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1 (got " + std::to_string(d) + ")");
    std::size_t n = 1;
    for (int s = 0; s < d; ++s) {
        n *= static_cast<std::size_t>(m);
        if (n > kMaxVertices)
            throw Error(ErrorCode::TooLarge, "m^d exceeds the cap of 2^26 vertices (m=" + std::to_string(m) +
                                                 ", d=" + std::to_string(d) + ")");
    }
    return n;
}

TorusGraphSpec::TorusGraphSpec(int m, int d, Power power)
    : m_(m), d_(d), power_(power), vertex_count_(checked_vertex_count(m, d)) {
    if (power == Power::Inf && d > kMaxInfDim)
        throw Error(ErrorCode::TooLarge, "AND-power supports d <= " + std::to_string(kMaxInfDim));

    strides_.resize(static_cast<std::size_t>(d));
    std::size_t stride = 1;
    for (int s = 0; s < d; ++s) {
        strides_[static_cast<std::size_t>(s)] = stride;
        stride *= static_cast<std::size_t>(m);
    }

    auto push_step = [&](const std::vector<int>& delta) {
        std::int64_t linear = 0;
        for (int s = 0; s < d; ++s) {
            steps_.push_back(static_cast<std::int8_t>(delta[static_cast<std::size_t>(s)]));
            linear += delta[static_cast<std::size_t>(s)] * static_cast<std::int64_t>(strides_[static_cast<std::size_t>(s)]);
        }
        step_delta_.push_back(linear);
    };

    if (power == Power::One) {
        for (int s = 0; s < d; ++s) {
            std::vector<int> delta(static_cast<std::size_t>(d), 0);
            delta[static_cast<std::size_t>(s)] = 1;
            push_step(delta);
            delta[static_cast<std::size_t>(s)] = -1;
            push_step(delta);
        }
    } else {
        // Base-3 counter over {-1, 0, +1}^d, skipping the zero vector.
        std::vector<int> digit(static_cast<std::size_t>(d), 0);
        while (true) {
            std::vector<int> delta(static_cast<std::size_t>(d));
            bool nonzero = false;
            for (int s = 0; s < d; ++s) {
                delta[static_cast<std::size_t>(s)] = digit[static_cast<std::size_t>(s)] - 1;
                nonzero |= delta[static_cast<std::size_t>(s)] != 0;
            }
            if (nonzero) push_step(delta);
            int s = 0;
            while (s < d && digit[static_cast<std::size_t>(s)] == 2) digit[static_cast<std::size_t>(s++)] = 0;
            if (s == d) break;
            ++digit[static_cast<std::size_t>(s)];
        }
    }
}

VertexId TorusGraphSpec::encode(const TorusVertex& v) const {
    if (!valid(v)) throw Error(ErrorCode::InvalidArgument, "vertex coordinates out of range");
    std::size_t id = 0;
    for (int s = d_ - 1; s >= 0; --s) id = id * static_cast<std::size_t>(m_) + static_cast<std::size_t>(v.coords[static_cast<std::size_t>(s)]);
    return static_cast<VertexId>(id);
}

TorusVertex TorusGraphSpec::decode(VertexId id) const {
    TorusVertex v;
    v.coords.resize(static_cast<std::size_t>(d_));
    std::size_t rest = id;
    for (int s = 0; s < d_; ++s) {
        v.coords[static_cast<std::size_t>(s)] = static_cast<int>(rest % static_cast<std::size_t>(m_));
        rest /= static_cast<std::size_t>(m_);
    }
    return v;
}

bool TorusGraphSpec::valid(const TorusVertex& v) const noexcept {
    if (v.coords.size() != static_cast<std::size_t>(d_)) return false;
    return std::all_of(v.coords.begin(), v.coords.end(), [&](int c) { return c >= 0 && c < m_; });
}

bool TorusGraphSpec::is_interior(VertexId v) const noexcept {
    std::size_t rest = v;
    for (int s = 0; s < d_; ++s) {
        const auto c = rest % static_cast<std::size_t>(m_);
        if (c == 0 || c == static_cast<std::size_t>(m_ - 1)) return false;
        rest /= static_cast<std::size_t>(m_);
    }
    return true;
}

VertexId TorusGraphSpec::neighbor(VertexId v, std::size_t k) const noexcept {
    const auto delta = step(k);
    std::int64_t id = v;
    std::size_t rest = v;
    for (int s = 0; s < d_; ++s) {
        const auto c = static_cast<int>(rest % static_cast<std::size_t>(m_));
        rest /= static_cast<std::size_t>(m_);
        const int step_s = delta[static_cast<std::size_t>(s)];
        if (step_s == 0) continue;
        int next = c + step_s;
        if (next < 0) next += m_;
        if (next >= m_) next -= m_;
        id += static_cast<std::int64_t>(next - c) * static_cast<std::int64_t>(strides_[static_cast<std::size_t>(s)]);
    }
    return static_cast<VertexId>(id);
}

std::vector<VertexId> TorusGraphSpec::neighbors(VertexId v) const {
    std::vector<VertexId> out;
    out.reserve(degree());
    for_each_neighbor(v, [&](VertexId u, std::size_t) { out.push_back(u); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TorusVertex> TorusGraphSpec::neighbors(const TorusVertex& v) const {
    std::vector<TorusVertex> out;
    for (VertexId u : neighbors(encode(v))) out.push_back(decode(u));
    return out;
}

bool TorusGraphSpec::adjacent(VertexId u, VertexId v) const {
    if (u == v) return false;
    int nonzero = 0;
    for (int s = 0; s < d_; ++s) {
        const int diff = ((coord(v, s) - coord(u, s)) % m_ + m_) % m_;
        if (diff == 0) continue;
        if (diff != 1 && diff != m_ - 1) return false;
        ++nonzero;
    }
    return power_ == Power::Inf || nonzero == 1;
}

Displacement TorusGraphSpec::displacement(VertexId u, VertexId v) const {
    if (u >= vertex_count_ || v >= vertex_count_) throw Error(ErrorCode::InvalidArgument, "vertex index out of range");
    if (!adjacent(u, v))
        throw Error(ErrorCode::NotAnEdge, "vertices " + std::to_string(u) + " and " + std::to_string(v) + " are not adjacent");
    Displacement delta(static_cast<std::size_t>(d_), 0);
    for (int s = 0; s < d_; ++s) {
        const int diff = ((coord(v, s) - coord(u, s)) % m_ + m_) % m_;
        delta[static_cast<std::size_t>(s)] = diff == 0 ? 0 : (diff == 1 ? 1 : -1);
    }
    return delta;
}

Displacement TorusGraphSpec::displacement(const TorusVertex& u, const TorusVertex& v) const {
    return displacement(encode(u), encode(v));
}

VertexId TorusGraphSpec::translate(VertexId v, VertexId shift) const noexcept {
    std::size_t id = 0;
    std::size_t a = v;
    std::size_t b = shift;
    const auto m = static_cast<std::size_t>(m_);
    for (int s = 0; s < d_; ++s) {
        std::size_t c = a % m + b % m;
        if (c >= m) c -= m;
        id += c * strides_[static_cast<std::size_t>(s)];
        a /= m;
        b /= m;
    }
    return static_cast<VertexId>(id);
}

// ---------------------------------------------------------------------------

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet VertexSet::full(std::size_t universe) {
    VertexSet s(universe);
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    s.clear_tail();
    s.size_ = universe;
    return s;
}

VertexSet VertexSet::from(std::size_t universe, std::span<const VertexId> members) {
    VertexSet s(universe);
    for (VertexId v : members) {
        if (v >= universe) throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " outside universe");
        s.insert(v);
    }
    return s;
}

bool VertexSet::insert(VertexId v) {
    auto& w = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (w & bit) return false;
    w |= bit;
    ++size_;
    return true;
}

bool VertexSet::erase(VertexId v) {
    auto& w = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (!(w & bit)) return false;
    w &= ~bit;
    --size_;
    return true;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    recount();
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    recount();
    return *this;
}

VertexSet VertexSet::complement() const {
    VertexSet s(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.clear_tail();
    s.size_ = universe_ - size_;
    return s;
}

bool VertexSet::intersects(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

bool VertexSet::subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

std::vector<VertexId> VertexSet::members() const {
    std::vector<VertexId> out;
    out.reserve(size_);
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
}

void VertexSet::recount() {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    size_ = n;
}

void VertexSet::clear_tail() {
    if (universe_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
}

std::vector<Edge> EdgeSet::sorted() const {
    std::vector<Edge> out;
    out.reserve(keys_.size());
    for (auto k : keys_) out.emplace_back(static_cast<VertexId>(k >> 32), static_cast<VertexId>(k & 0xffffffffU));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

VertexSet shift_set(const TorusGraphSpec& spec, const VertexSet& set, VertexId shift) {
    VertexSet out(set.universe());
    set.for_each([&](VertexId w) { out.insert(spec.translate(w, shift)); });
    return out;
}

VertexSet shift_set(const TorusGraphSpec& spec, const VertexSet& set, const TorusVertex& shift) {
    return shift_set(spec, set, spec.encode(shift));
}

VertexSet outer_boundary(const TorusGraphSpec& spec, const VertexSet& set) {
    VertexSet out(set.universe());
    set.for_each([&](VertexId w) {
        spec.for_each_neighbor(w, [&](VertexId u, std::size_t) {
            if (!set.contains(u)) out.insert(u);
        });
    });
    return out;
}

std::size_t edge_boundary_size(const TorusGraphSpec& spec, const VertexSet& set) {
    std::size_t count = 0;
    set.for_each([&](VertexId w) {
        spec.for_each_neighbor(w, [&](VertexId u, std::size_t) {
            if (!set.contains(u)) ++count;
        });
    });
    return count;
}

}  // namespace spines
