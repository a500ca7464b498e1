#include <doctest.h>

#include <cmath>
#include <deque>

#include "spines/cheeger.hpp"
#include "spines/spectral.hpp"
#include "spines/spine.hpp"
#include "spines/verify.hpp"

using namespace spines;

namespace {

ShiftSource fixed_shifts(std::deque<VertexId> shifts) {
    return [q = std::move(shifts)]() mutable {
        const VertexId v = q.front();
        q.pop_front();
        return v;
    };
}

}  // namespace

TEST_CASE("edge builder by hand on C_4") {
    TorusGraphSpec c4(4, 1, Power::One);
    auto W = VertexSet::from(4, std::vector<VertexId>{0, 1, 2});
    auto spine = build_edge_spine(c4, W, fixed_shifts({0, 1}));
    CHECK(spine.trace.shifts_used == 2);
    CHECK(spine.trace.per_shift_contribution == std::vector<std::size_t>{2, 1});
    CHECK(spine.total_size == 2);
    CHECK(spine.contribution_sum == 3);
    CHECK(spine.edges.contains(2, 3));
    CHECK(spine.edges.contains(3, 0));

    auto full = build_edge_spine(c4, VertexSet::full(4), fixed_shifts({2}));
    CHECK(full.trace.shifts_used == 1);
    CHECK(full.total_size == 0);
}

TEST_CASE("vertex builder by hand on C_4") {
    TorusGraphSpec c4(4, 1, Power::One);
    auto W = VertexSet::from(4, std::vector<VertexId>{0, 1, 2});
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto spine = build_vertex_spine(c4, W, seed);
        CHECK(spine.trace.shifts_used == 1);
        CHECK(spine.vertices.size() == 1);
        CHECK(is_spine(c4, spine.vertices).is_spine);
    }
    auto mc = monte_carlo_vertex(c4, W, 100, 1, 1);
    CHECK(mc.spine_size.mean_size == 1.0);
    CHECK(mc.spine_size.std_error == 0.0);
}

TEST_CASE("builders reject empty bodies") {
    TorusGraphSpec g(4, 2, Power::Inf);
    try {
        build_edge_spine(g, VertexSet(g.vertex_count()), 1);
        FAIL("expected EmptyBody");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyBody);
    }
}

TEST_CASE("same seed gives the same spine") {
    TorusGraphSpec g(6, 2, Power::Inf);
    auto W = sweep(g, TensorProfile(sine_profile(6), 2), CutKind::Edge).best.W;
    auto a = build_edge_spine(g, W, 42);
    auto b = build_edge_spine(g, W, 42);
    CHECK(a.trace.shifts == b.trace.shifts);
    CHECK(a.edges.sorted() == b.edges.sorted());
    auto c = build_edge_spine(g, W, 43);
    CHECK(c.trace.seed == 43);
}

TEST_CASE("random spines verify and respect the expectation bounds") {
    TorusGraphSpec c4(4, 1, Power::One);
    auto W = VertexSet::from(4, std::vector<VertexId>{0, 1, 2});
    auto mc = monte_carlo_edge(c4, W, 1000, 1, 1);
    CHECK(mc.contribution_sum.mean_size <= (2.0 / 3.0) * 4 + 3 * mc.contribution_sum.std_error);

    for (Power p : {Power::One, Power::Inf}) {
        TorusGraphSpec g(6, 2, p);
        TensorProfile f(sine_profile(6), 2);
        auto edge_body = sweep(g, f, CutKind::Edge).best;
        auto emc = monte_carlo_edge(g, edge_body.W, 200, 7, 1);
        const double ebound = to_double(edge_body.ratio) * static_cast<double>(g.vertex_count());
        CHECK(emc.contribution_sum.mean_size <= ebound + 3 * emc.contribution_sum.std_error);
        for (std::size_t i = 0; i < 200; ++i)
            CHECK(emc.spine_size.per_run_sizes[i] <= emc.contribution_sum.per_run_sizes[i]);

        auto vertex_body = sweep(g, f, CutKind::Vertex).best;
        auto vmc = monte_carlo_vertex(g, vertex_body.W, 200, 7, 1);
        const double expected = to_double(vertex_body.compared_value()) * static_cast<double>(g.vertex_count());
        CHECK(std::abs(vmc.spine_size.mean_size - expected) <= 3 * vmc.spine_size.std_error + 1e-9);
    }
}

TEST_CASE("closure covering V gives a deterministic vertex spine") {
    TorusGraphSpec g(5, 1, Power::One);
    auto W = VertexSet::from(5, std::vector<VertexId>{0, 1, 2});
    // W u N(W) = V, so one shift suffices and |B_1| = |N(W) - W| = 2 every time.
    auto mc = monte_carlo_vertex(g, W, 50, 3, 1);
    for (auto s : mc.spine_size.per_run_sizes) CHECK(s == 2);
    for (auto s : mc.shifts_used) CHECK(s == 1);
}

TEST_CASE("monte carlo aggregation does not depend on the job count") {
    TorusGraphSpec g(6, 2, Power::Inf);
    auto W = sweep(g, TensorProfile(sine_profile(6), 2), CutKind::Edge).best.W;
    auto one = monte_carlo_edge(g, W, 40, 100, 1);
    auto four = monte_carlo_edge(g, W, 40, 100, 4);
    CHECK(one.spine_size.per_run_sizes == four.spine_size.per_run_sizes);
    CHECK(one.contribution_sum.mean_size == four.contribution_sum.mean_size);
}

TEST_CASE("run statistics") {
    auto single = summarize({7});
    CHECK(single.runs == 1);
    CHECK(single.mean_size == 7.0);
    CHECK(single.std_error == 0.0);
    auto s = summarize({1, 2, 3, 4});
    CHECK(s.mean_size == 2.5);
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("random numbers") {
    Rng a(5), b(5), c(5, 1);
    CHECK(a.next() == b.next());
    CHECK(Rng(5).next() != c.next());
    Rng r(9);
    std::vector<int> counts(3, 0);
    for (int i = 0; i < 30000; ++i) ++counts[r.below(3)];
    for (int k : counts) CHECK(std::abs(k - 10000) < 500);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
