#include "spines/spine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "spines/verify.hpp"

namespace spines {

std::size_t coverage_shift_cap(std::size_t vertex_count, std::size_t body_size) {
    const double n = static_cast<double>(vertex_count);
    return static_cast<std::size_t>(std::ceil(64.0 * n / static_cast<double>(body_size) * std::log(n + 1.0)));
}

VertexId random_shift(const TorusGraphSpec& spec, Rng& rng) {
    std::size_t id = 0;
    for (int s = 0; s < spec.d(); ++s) id += rng.below(static_cast<std::uint64_t>(spec.m())) * spec.stride(s);
    return static_cast<VertexId>(id);
}

namespace {

void check_body(const TorusGraphSpec& spec, const VertexSet& W) {
    if (W.universe() != spec.vertex_count()) throw Error(ErrorCode::InvalidArgument, "body has the wrong universe");
    if (W.empty()) throw Error(ErrorCode::EmptyBody, "the body W is empty");
}

ShiftSource seeded_source(const TorusGraphSpec& spec, std::uint64_t seed) {
    return [&spec, rng = Rng(seed)]() mutable { return random_shift(spec, rng); };
}

}  // namespace

EdgeSpine build_edge_spine(const TorusGraphSpec& spec, const VertexSet& W, const ShiftSource& next_shift,
                           std::uint64_t seed_label) {
    check_body(spec, W);
    const std::size_t cap = coverage_shift_cap(spec.vertex_count(), W.size());
    EdgeSpine out;
    out.trace.seed = seed_label;
    VertexSet covered(spec.vertex_count());

    while (!covered.is_full()) {
        if (out.trace.shifts.size() >= cap)
            throw Error(ErrorCode::CoverageCapExceeded, "no full cover after " + std::to_string(cap) + " shifts");
        const VertexId shift = next_shift();
        const VertexSet shifted = shift_set(spec, W, shift);
        std::size_t contribution = 0;
        shifted.for_each([&](VertexId w) {
            if (covered.contains(w)) return;
            spec.for_each_neighbor(w, [&](VertexId u, std::size_t) {
                if (shifted.contains(u)) return;
                ++contribution;
                out.edges.insert(w, u);
            });
        });
        covered |= shifted;
        out.trace.shifts.push_back(shift);
        out.trace.per_shift_contribution.push_back(contribution);
        out.contribution_sum += contribution;
    }
    out.trace.shifts_used = out.trace.shifts.size();
    out.total_size = out.edges.size();
    return out;
}

EdgeSpine build_edge_spine(const TorusGraphSpec& spec, const VertexSet& W, std::uint64_t seed) {
    return build_edge_spine(spec, W, seeded_source(spec, seed), seed);
}

VertexSpine build_vertex_spine(const TorusGraphSpec& spec, const VertexSet& W, const ShiftSource& next_shift,
                               std::uint64_t seed_label) {
    check_body(spec, W);
    const std::size_t cap = coverage_shift_cap(spec.vertex_count(), W.size());
    // N(W + v) = N(W) + v, so the boundary and closure are shifted rather than recomputed.
    const VertexSet rim = outer_boundary(spec, W);
    VertexSpine out;
    out.trace.seed = seed_label;
    out.vertices = VertexSet(spec.vertex_count());
    VertexSet covered(spec.vertex_count());

    while (!covered.is_full()) {
        if (out.trace.shifts.size() >= cap)
            throw Error(ErrorCode::CoverageCapExceeded, "no full cover after " + std::to_string(cap) + " shifts");
        const VertexId shift = next_shift();
        std::size_t contribution = 0;
        rim.for_each([&](VertexId r) {
            const VertexId v = spec.translate(r, shift);
            if (covered.contains(v)) return;
            if (!out.vertices.insert(v))
                throw Error(ErrorCode::VerificationFailed, "B_i sets overlap at vertex " + std::to_string(v));
            ++contribution;
        });
        covered |= shift_set(spec, W, shift);
        covered |= shift_set(spec, rim, shift);
        out.trace.shifts.push_back(shift);
        out.trace.per_shift_contribution.push_back(contribution);
    }
    out.trace.shifts_used = out.trace.shifts.size();
    return out;
}

VertexSpine build_vertex_spine(const TorusGraphSpec& spec, const VertexSet& W, std::uint64_t seed) {
    return build_vertex_spine(spec, W, seeded_source(spec, seed), seed);
}

EdgeSpine trivial_edge_spine(const TorusGraphSpec& spec) {
    if (spec.power() != Power::One) throw Error(ErrorCode::InvalidArgument, "trivial edge spine is defined for the sum-power");
    EdgeSpine out;
    const int m = spec.m();
    for (int s = 0; s < spec.d(); ++s)
        for (VertexId v = 0; v < spec.vertex_count(); ++v)
            if (spec.coord(v, s) == m - 1)
                out.edges.insert(v, static_cast<VertexId>(v - static_cast<std::size_t>(m - 1) * spec.stride(s)));
    out.total_size = out.contribution_sum = out.edges.size();
    return out;
}

VertexSpine trivial_vertex_spine(const TorusGraphSpec& spec) {
    if (spec.power() != Power::Inf)
        throw Error(ErrorCode::InvalidArgument, "trivial vertex spine is defined for the AND-power");
    VertexSpine out;
    out.vertices = VertexSet(spec.vertex_count());
    for (VertexId v = 0; v < spec.vertex_count(); ++v)
        for (int s = 0; s < spec.d(); ++s)
            if (spec.coord(v, s) == 0) {
                out.vertices.insert(v);
                break;
            }
    return out;
}

RunStats summarize(std::vector<std::size_t> sizes, double bound) {
    RunStats r;
    r.runs = sizes.size();
    r.bound = bound;
    if (r.runs == 0) return r;
    double sum = 0;
    for (auto s : sizes) sum += static_cast<double>(s);
    r.mean_size = sum / static_cast<double>(r.runs);
    if (r.runs > 1) {
        double ss = 0;
        for (auto s : sizes) ss += (static_cast<double>(s) - r.mean_size) * (static_cast<double>(s) - r.mean_size);
        r.std_error = std::sqrt(ss / static_cast<double>(r.runs - 1)) / std::sqrt(static_cast<double>(r.runs));
    }
    r.per_run_sizes = std::move(sizes);
    return r;
}

namespace {

struct RunRecord {
    std::size_t spine_size = 0;
    std::size_t contribution_sum = 0;
    std::size_t shifts = 0;
};

template <class RunOne>
MonteCarloResult run_seeds(std::size_t runs, std::uint64_t base_seed, unsigned jobs, RunOne&& run_one) {
    if (runs == 0) throw Error(ErrorCode::InvalidArgument, "runs must be >= 1");
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(runs)));
    std::vector<RunRecord> records(runs);
    std::vector<std::exception_ptr> errors(runs);

    auto worker = [&](unsigned offset) {
        for (std::size_t i = offset; i < runs; i += jobs) {
            try {
                records[i] = run_one(base_seed + i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
        for (auto& t : threads) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<std::size_t> sizes, sums;
    MonteCarloResult out;
    for (const auto& r : records) {
        sizes.push_back(r.spine_size);
        sums.push_back(r.contribution_sum);
        out.shifts_used.push_back(r.shifts);
    }
    out.spine_size = summarize(std::move(sizes));
    out.contribution_sum = summarize(std::move(sums));
    return out;
}

}  // namespace

MonteCarloResult monte_carlo_edge(const TorusGraphSpec& spec, const VertexSet& W, std::size_t runs,
                                  std::uint64_t base_seed, unsigned jobs) {
    return run_seeds(runs, base_seed, jobs, [&](std::uint64_t seed) {
        const auto spine = build_edge_spine(spec, W, seed);
        if (const auto check = is_spine(spec, spine.edges); !check.is_spine)
            throw Error(ErrorCode::VerificationFailed, "edge spine for seed " + std::to_string(seed) +
                                                           " misses a nontrivial cycle");
        return RunRecord{spine.total_size, spine.contribution_sum, spine.trace.shifts_used};
    });
}

MonteCarloResult monte_carlo_vertex(const TorusGraphSpec& spec, const VertexSet& W, std::size_t runs,
                                    std::uint64_t base_seed, unsigned jobs) {
    return run_seeds(runs, base_seed, jobs, [&](std::uint64_t seed) {
        const auto spine = build_vertex_spine(spec, W, seed);
        if (const auto check = is_spine(spec, spine.vertices); !check.is_spine)
            throw Error(ErrorCode::VerificationFailed, "vertex spine for seed " + std::to_string(seed) +
                                                           " misses a nontrivial cycle");
        return RunRecord{spine.vertices.size(), spine.vertices.size(), spine.trace.shifts_used};
    });
}

}  // namespace spines
