#include <doctest.h>

#include <cmath>
#include <random>

#include "spines/spine.hpp"
#include "spines/verify.hpp"

using namespace spines;

namespace {

// Recomputes the winding of a closed vertex sequence from coordinates alone.
std::vector<long long> oracle_winding(const TorusGraphSpec& g, const std::vector<VertexId>& cycle) {
    const int m = g.m();
    std::vector<long long> total(static_cast<std::size_t>(g.d()), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        auto a = g.decode(cycle[i]).coords;
        auto b = g.decode(cycle[(i + 1) % cycle.size()]).coords;
        for (int s = 0; s < g.d(); ++s) {
            int step = ((b[s] - a[s]) % m + m) % m;
            if (step == m - 1) step = -1;
            REQUIRE(std::abs(step) <= 1);
            total[s] += step;
        }
    }
    for (auto& t : total) {
        REQUIRE(t % m == 0);
        t /= m;
    }
    return total;
}

struct RandomRemoval {
    EdgeSet edges;
    VertexSet vertices;
};

RandomRemoval random_removal(const TorusGraphSpec& g, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double pe = unit(gen) * 0.6, pv = unit(gen) < 0.5 ? 0.0 : unit(gen) * 0.4;
    RandomRemoval r{EdgeSet{}, VertexSet(g.vertex_count())};
    g.for_each_edge([&](VertexId u, VertexId v) {
        if (unit(gen) < pe) r.edges.insert(u, v);
    });
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (unit(gen) < pv) r.vertices.insert(v);
    return r;
}

}  // namespace

TEST_CASE("lifting on C_4") {
    TorusGraphSpec c4(4, 1, Power::One);
    auto w = has_nontrivial_cycle(c4, nullptr, nullptr);
    REQUIRE(w);
    CHECK(w->cycle.size() == 4);
    CHECK(std::abs(w->winding[0]) == 1);
    CHECK(w->winding == oracle_winding(c4, w->cycle));

    EdgeSet cut;
    cut.insert(3, 0);
    CHECK_FALSE(has_nontrivial_cycle(c4, &cut, nullptr));
    CHECK_FALSE(cycle_enum_oracle(c4, &cut, nullptr));
    CHECK(cycle_enum_oracle(c4, nullptr, nullptr));

    auto none = is_spine(c4, EdgeSet{});
    CHECK_FALSE(none.is_spine);
    REQUIRE(none.witness);
    CHECK(none.witness->cycle.size() == 4);
    EdgeSet one;
    one.insert(0, 1);
    CHECK(is_spine(c4, one).is_spine);
}

TEST_CASE("trivial spines are spines") {
    for (int m = 3; m <= 5; ++m)
        for (int d = 1; d <= 3; ++d) {
            TorusGraphSpec g(m, d, Power::One);
            auto spine = trivial_edge_spine(g);
            CHECK(spine.edges.size() == static_cast<std::size_t>(d * std::pow(m, d - 1)));
            CHECK(is_spine(g, spine.edges).is_spine);
            CHECK_FALSE(has_nontrivial_cycle(g, &spine.edges, nullptr));
        }
    for (int m = 3; m <= 4; ++m)
        for (int d = 1; d <= 3; ++d) {
            TorusGraphSpec g(m, d, Power::Inf);
            auto spine = trivial_vertex_spine(g);
            CHECK(spine.vertices.size() == static_cast<std::size_t>(std::pow(m, d) - std::pow(m - 1, d)));
            CHECK(is_spine(g, spine.vertices).is_spine);
        }
    CHECK_THROWS_AS(trivial_edge_spine(TorusGraphSpec(3, 2, Power::Inf)), Error);
    CHECK_THROWS_AS(trivial_vertex_spine(TorusGraphSpec(3, 2, Power::One)), Error);
}

TEST_CASE("dropping any element of a minimum spine breaks it") {
    TorusGraphSpec g(3, 2, Power::One);
    auto spine = trivial_edge_spine(g).edges.sorted();
    for (std::size_t skip = 0; skip < spine.size(); ++skip) {
        EdgeSet partial;
        for (std::size_t i = 0; i < spine.size(); ++i)
            if (i != skip) partial.insert(spine[i].u, spine[i].v);
        auto check = is_spine(g, partial);
        CHECK_FALSE(check.is_spine);
        REQUIRE(check.witness);
        CHECK(witness_is_valid(g, *check.witness, &partial, nullptr));
    }
}

TEST_CASE("lifting agrees with cycle enumeration on random removals") {
    std::mt19937_64 gen(2024);
    const TorusGraphSpec graphs[] = {TorusGraphSpec(5, 1, Power::One), TorusGraphSpec(3, 2, Power::One),
                                     TorusGraphSpec(3, 2, Power::Inf), TorusGraphSpec(4, 1, Power::One),
                                     TorusGraphSpec(3, 1, Power::One)};
    for (const auto& g : graphs) {
        int found = 0;
        for (int trial = 0; trial < 300; ++trial) {
            auto r = random_removal(g, gen);
            auto lifted = has_nontrivial_cycle(g, &r.edges, &r.vertices);
            const bool enumerated = cycle_enum_oracle(g, &r.edges, &r.vertices);
            REQUIRE(lifted.has_value() == enumerated);
            if (lifted) {
                ++found;
                CHECK(witness_is_valid(g, *lifted, &r.edges, &r.vertices));
                CHECK(lifted->winding == oracle_winding(g, lifted->cycle));
                CHECK(lifted->winding == winding_of(g, lifted->cycle));
                bool nonzero = false;
                for (auto w : lifted->winding) nonzero |= w != 0;
                CHECK(nonzero);
            }
        }
        CHECK(found > 0);
        CHECK(found < 300);
    }
}

TEST_CASE("induced cycles of bodies") {
    TorusGraphSpec g(4, 2, Power::One);
    VertexSet row(g.vertex_count());
    for (int x = 0; x < 4; ++x) row.insert(g.encode(TorusVertex{{x, 1}}));
    auto w = induced_nontrivial_cycle(g, row);
    REQUIRE(w);
    CHECK(std::abs(w->winding[0]) == 1);
    CHECK(w->winding[1] == 0);
    row.erase(g.encode(TorusVertex{{2, 1}}));
    CHECK_FALSE(induced_nontrivial_cycle(g, row));
}

TEST_CASE("brute-force minimum spines") {
    auto e = brute_force_min_spine(TorusGraphSpec(3, 2, Power::One), CutKind::Edge);
    CHECK(e.size == 6);
    CHECK(e.witness_edges.size() == 6);
    EdgeSet ws;
    for (auto& edge : e.witness_edges) ws.insert(edge);
    CHECK(is_spine(TorusGraphSpec(3, 2, Power::One), ws).is_spine);

    auto v = brute_force_min_spine(TorusGraphSpec(3, 2, Power::Inf), CutKind::Vertex);
    CHECK(v.size == 5);
    auto vs = VertexSet::from(9, v.witness_vertices);
    CHECK(is_spine(TorusGraphSpec(3, 2, Power::Inf), vs).is_spine);

    CHECK(brute_force_min_spine(TorusGraphSpec(3, 1, Power::One), CutKind::Edge).size == 1);
    CHECK(brute_force_min_spine(TorusGraphSpec(4, 1, Power::Inf), CutKind::Vertex).size == 1);
}

TEST_CASE("edge-disjoint axis cycles") {
    auto c = edge_disjoint_cycle_cover_check(TorusGraphSpec(3, 2, Power::One));
    CHECK(c.cycle_count == 6);
    CHECK(c.ok());
    for (auto& cyc : c.cycles) CHECK(cyc.size() == 3);
    for (auto& w : c.windings) {
        long long norm = 0;
        for (auto x : w) norm += std::abs(x);
        CHECK(norm == 1);
    }
    auto c4 = edge_disjoint_cycle_cover_check(TorusGraphSpec(4, 1, Power::One));
    CHECK(c4.cycle_count == 1);
    CHECK(c4.ok());
    CHECK(edge_disjoint_cycle_cover_check(TorusGraphSpec(5, 3, Power::One)).ok());
}
