#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "spines/torus_graph.hpp"

using namespace spines;

namespace {

// Independent neighbour oracle working on coordinate tuples only.
std::set<std::vector<int>> oracle_neighbors(int m, int d, Power power, const std::vector<int>& v) {
    std::set<std::vector<int>> out;
    std::vector<int> delta(static_cast<std::size_t>(d), -1);
    while (true) {
        int nonzero = 0;
        for (int x : delta) nonzero += x != 0;
        const bool ok = power == Power::One ? nonzero == 1 : nonzero >= 1;
        if (ok) {
            std::vector<int> w(v);
            for (int s = 0; s < d; ++s) w[s] = ((w[s] + delta[s]) % m + m) % m;
            out.insert(w);
        }
        int s = 0;
        while (s < d && delta[s] == 1) delta[s++] = -1;
        if (s == d) break;
        ++delta[s];
    }
    return out;
}

}  // namespace

TEST_CASE("neighbors match the coordinate oracle") {
    SUBCASE("sum-power m=4 d=2 at origin") {
        TorusGraphSpec g(4, 2, Power::One);
        auto nb = g.neighbors(TorusVertex{{0, 0}});
        std::set<std::vector<int>> got;
        for (auto& v : nb) got.insert(v.coords);
        CHECK(got == std::set<std::vector<int>>{{1, 0}, {3, 0}, {0, 1}, {0, 3}});
    }
    SUBCASE("and-power m=5 d=2 at origin") {
        TorusGraphSpec g(5, 2, Power::Inf);
        auto nb = g.neighbors(TorusVertex{{0, 0}});
        CHECK(nb.size() == 8);
        std::set<std::vector<int>> got;
        for (auto& v : nb) got.insert(v.coords);
        CHECK(got == oracle_neighbors(5, 2, Power::Inf, {0, 0}));
    }
    for (int m : {3, 4, 5})
        for (int d : {1, 2, 3})
            for (Power p : {Power::One, Power::Inf}) {
                TorusGraphSpec g(m, d, p);
                CHECK(g.degree() == (p == Power::One ? 2u * d : static_cast<std::size_t>(std::pow(3, d)) - 1));
                for (VertexId v = 0; v < g.vertex_count(); ++v) {
                    const auto tv = g.decode(v);
                    CHECK(g.encode(tv) == v);
                    std::set<std::vector<int>> got;
                    for (VertexId u : g.neighbors(v)) got.insert(g.decode(u).coords);
                    REQUIRE(got == oracle_neighbors(m, d, p, tv.coords));
                }
            }
}

TEST_CASE("adjacency is symmetric and edges are counted once") {
    for (int m : {3, 4, 6})
        for (int d : {1, 2, 3})
            for (Power p : {Power::One, Power::Inf}) {
                TorusGraphSpec g(m, d, p);
                std::size_t count = 0;
                g.for_each_edge([&](VertexId u, VertexId v) {
                    ++count;
                    CHECK(u < v);
                    CHECK(g.adjacent(u, v));
                    CHECK(g.adjacent(v, u));
                });
                CHECK(count == g.edge_count());
            }
    CHECK(TorusGraphSpec(4, 2, Power::One).edge_count() == 32);
    CHECK(TorusGraphSpec(3, 2, Power::Inf).edge_count() == 36);
    CHECK(TorusGraphSpec(3, 1, Power::One).edge_count() == 3);
}

TEST_CASE("displacement") {
    TorusGraphSpec c5(5, 1, Power::One);
    CHECK(c5.displacement(TorusVertex{{4}}, TorusVertex{{0}}) == Displacement{1});
    CHECK(c5.displacement(TorusVertex{{0}}, TorusVertex{{4}}) == Displacement{-1});
    TorusGraphSpec g(5, 2, Power::Inf);
    CHECK(g.displacement(TorusVertex{{4, 2}}, TorusVertex{{0, 1}}) == Displacement{1, -1});
    CHECK_THROWS_AS(g.displacement(TorusVertex{{0, 0}}, TorusVertex{{2, 0}}), Error);
    try {
        g.displacement(TorusVertex{{0, 0}}, TorusVertex{{2, 0}});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAnEdge);
    }
}

TEST_CASE("closed random walks have displacement divisible by m") {
    std::mt19937_64 gen(7);
    for (Power p : {Power::One, Power::Inf}) {
        TorusGraphSpec g(5, 3, p);
        for (int trial = 0; trial < 200; ++trial) {
            VertexId start = static_cast<VertexId>(gen() % g.vertex_count());
            VertexId v = start;
            std::vector<long long> total(3, 0);
            // Walk randomly, then walk back along coordinate steps until we return.
            for (int step = 0; step < 30; ++step) {
                auto nb = g.neighbors(v);
                VertexId u = nb[gen() % nb.size()];
                auto disp = g.displacement(v, u);
                for (int s = 0; s < 3; ++s) total[s] += disp[s];
                v = u;
            }
            while (v != start) {
                auto tv = g.decode(v), ts = g.decode(start);
                for (int s = 0; s < 3; ++s)
                    if (tv.coords[s] != ts.coords[s]) {
                        tv.coords[s] = (tv.coords[s] + 1) % 5;
                        total[s] += 1;
                        break;
                    }
                v = g.encode(tv);
            }
            for (int s = 0; s < 3; ++s) CHECK(total[s] % 5 == 0);
        }
    }
}

TEST_CASE("shifts") {
    TorusGraphSpec c4(4, 1, Power::One);
    auto W = VertexSet::from(4, std::vector<VertexId>{0, 1, 2});
    CHECK(shift_set(c4, W, TorusVertex{{0}}) == W);
    CHECK(shift_set(c4, W, TorusVertex{{1}}).members() == std::vector<VertexId>{1, 2, 3});

    TorusGraphSpec g(5, 2, Power::Inf);
    std::mt19937_64 gen(3);
    VertexSet S(g.vertex_count());
    for (int i = 0; i < 9; ++i) S.insert(static_cast<VertexId>(gen() % g.vertex_count()));
    for (int trial = 0; trial < 20; ++trial) {
        TorusVertex v{{static_cast<int>(gen() % 5), static_cast<int>(gen() % 5)}};
        TorusVertex inv{{(5 - v.coords[0]) % 5, (5 - v.coords[1]) % 5}};
        CHECK(shift_set(g, shift_set(g, S, v), inv) == S);
        auto shifted = shift_set(g, S, v);
        CHECK(edge_boundary_size(g, shifted) == edge_boundary_size(g, S));
        CHECK(outer_boundary(g, shifted).size() == outer_boundary(g, S).size());
    }
}

TEST_CASE("boundaries by hand") {
    TorusGraphSpec c4(4, 1, Power::One);
    auto W = VertexSet::from(4, std::vector<VertexId>{0, 1, 2});
    CHECK(edge_boundary_size(c4, W) == 2);
    CHECK(outer_boundary(c4, W).members() == std::vector<VertexId>{3});
    auto V = VertexSet::full(4);
    CHECK(edge_boundary_size(c4, V) == 0);
    CHECK(outer_boundary(c4, V).empty());
}

TEST_CASE("vertex sets") {
    VertexSet a(70), b(70);
    a.insert(3);
    a.insert(65);
    b.insert(65);
    CHECK(a.size() == 2);
    CHECK(b.subset_of(a));
    CHECK(a.intersects(b));
    CHECK(a.complement().size() == 68);
    a -= b;
    CHECK(a.members() == std::vector<VertexId>{3});
    CHECK(VertexSet::full(70).is_full());
    CHECK(VertexSet::full(70).complement().empty());
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(TorusGraphSpec(2, 2, Power::One), Error);
    CHECK_THROWS_AS(TorusGraphSpec(3, 0, Power::One), Error);
    CHECK_THROWS_AS(TorusGraphSpec(3, 17, Power::One), Error);
    try {
        TorusGraphSpec(1000, 3, Power::One);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
    CHECK(parse_power("inf") == Power::Inf);
    CHECK(parse_power("one") == Power::One);
    CHECK_THROWS_AS(parse_power("two"), Error);
}
