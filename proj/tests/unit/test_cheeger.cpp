#include <doctest.h>

#include <cmath>
#include <set>

#include "spines/cheeger.hpp"
#include "spines/spectral.hpp"

using namespace spines;

namespace {

std::size_t oracle_edge_boundary(const TorusGraphSpec& g, const VertexSet& W) {
    std::size_t n = 0;
    for (VertexId w : W.members())
        for (VertexId u : g.neighbors(w)) n += !W.contains(u);
    return n;
}

std::size_t oracle_vertex_boundary(const TorusGraphSpec& g, const VertexSet& W) {
    std::set<VertexId> rim;
    for (VertexId w : W.members())
        for (VertexId u : g.neighbors(w))
            if (!W.contains(u)) rim.insert(u);
    return rim.size();
}

}  // namespace

TEST_CASE("boundary sizes") {
    TorusGraphSpec c4(4, 1, Power::One);
    auto W = VertexSet::from(4, std::vector<VertexId>{0, 1, 2});
    CHECK(boundary(c4, W, CutKind::Edge) == 2);
    CHECK(boundary(c4, W, CutKind::Vertex) == 1);
    CHECK(boundary(c4, VertexSet::full(4), CutKind::Edge) == 0);
    CHECK(boundary(c4, VertexSet::full(4), CutKind::Vertex) == 0);
}

TEST_CASE("sweep on C_4") {
    TorusGraphSpec c4(4, 1, Power::One);
    TensorProfile f(sine_profile(4), 1);
    auto edge = sweep(c4, f, CutKind::Edge);
    REQUIRE(edge.table.size() == 2);
    CHECK(edge.table[0].size == 3);
    CHECK(edge.table[0].ratio == Rational(2, 3));
    CHECK(edge.table[1].size == 1);
    CHECK(edge.table[1].ratio == Rational(2));
    CHECK(edge.best.ratio == Rational(2, 3));
    CHECK(edge.best.bound_satisfied);

    auto vertex = sweep(c4, f, CutKind::Vertex);
    CHECK(vertex.best.W.members() == std::vector<VertexId>{1, 2, 3});
    CHECK(vertex.best.ratio == Rational(1, 3));
    CHECK(vertex.best.compared_value() == Rational(1, 4));
    CHECK(vertex.best.bound == doctest::Approx(4 * std::sin(std::numbers::pi / 8)).epsilon(1e-12));
    CHECK(vertex.best.bound_satisfied);
}

TEST_CASE("sweep tables agree with from-scratch boundaries") {
    for (int m = 3; m <= 7; ++m)
        for (int d = 1; d <= 3; ++d)
            for (Power p : {Power::One, Power::Inf})
                for (CutKind kind : {CutKind::Edge, CutKind::Vertex}) {
                    TorusGraphSpec g(m, d, p);
                    TensorProfile f(sine_profile(m), d);
                    auto res = sweep(g, f, kind);
                    auto inc = incremental_sweep_ratio_table(g, f, kind);
                    REQUIRE(inc.size() == res.table.size());
                    for (std::size_t i = 0; i < inc.size(); ++i) {
                        const auto W = level_set(f, res.table[i].threshold);
                        CHECK(W.size() == res.table[i].size);
                        const std::size_t b =
                            kind == CutKind::Edge ? oracle_edge_boundary(g, W) : oracle_vertex_boundary(g, W);
                        CHECK(b == res.table[i].boundary);
                        CHECK(inc[i].boundary == b);
                        CHECK(res.table[i].ratio == Rational(static_cast<long long>(b), static_cast<long long>(W.size())));
                    }
                    // The largest level is the complement of the Dirichlet set.
                    CHECK(level_set(f, res.table.front().threshold) == dirichlet_set(g).complement());
                    // The smallest level is the argmax set.
                    const auto top = level_set(f, res.table.back().threshold);
                    double best = 0;
                    for (VertexId v = 0; v < g.vertex_count(); ++v) best = std::max(best, f.value_at(v));
                    for (VertexId v = 0; v < g.vertex_count(); ++v)
                        CHECK(top.contains(v) == (std::abs(f.value_at(v) - best) < 1e-9));
                    // The best row is the minimum ratio of the table.
                    Rational min_ratio = res.table.front().ratio;
                    for (auto& row : res.table) min_ratio = std::min(min_ratio, row.ratio);
                    CHECK(res.best.ratio == min_ratio);
                }
}

TEST_CASE("edge sweep respects the spectral bound") {
    for (int m = 3; m <= 8; ++m)
        for (int d = 1; d <= 3; ++d) {
            TorusGraphSpec g(m, d, Power::Inf);
            auto res = sweep(g, TensorProfile(sine_profile(m), d), CutKind::Edge);
            CHECK(res.best.bound == doctest::Approx(constants(m, d).mu).epsilon(1e-12));
            CHECK(res.best.bound_satisfied);
        }
    TorusGraphSpec g(3, 2, Power::Inf);
    auto res = sweep(g, TensorProfile(sine_profile(3), 2), CutKind::Edge);
    CHECK(res.table.size() == 1);  // both labels have the same sine value, so one positive level
    CHECK(to_double(res.best.ratio) <= constants(3, 2).mu);
}
