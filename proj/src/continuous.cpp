#include "spines/continuous.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "spines/error.hpp"
#include "spines/rng.hpp"

namespace spines::continuous {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kBlockSize = 1 << 16;

double wrap01(double x) {
    const double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

void check_dim(int d, int cap) {
    if (d < 1 || d > cap)
        throw Error(ErrorCode::InvalidArgument, "dimension must lie in 1.." + std::to_string(cap) + " (got " +
                                                    std::to_string(d) + ")");
}

void check_threshold(double t) {
    if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "threshold t must lie in (0, 1)");
}

/// phi and |grad phi| for a point already in [0,1)^d.
std::pair<double, double> phi_and_gradient_norm(const double* x, int d) {
    std::array<double, kMaxScanDim> s{}, c{};
    double prod = 1.0;
    for (int i = 0; i < d; ++i) {
        s[static_cast<std::size_t>(i)] = std::sin(kPi * x[i]);
        c[static_cast<std::size_t>(i)] = std::cos(kPi * x[i]);
        prod *= s[static_cast<std::size_t>(i)];
    }
    double g2 = 0.0;
    for (int i = 0; i < d; ++i) {
        double others = 1.0;
        for (int j = 0; j < d; ++j)
            if (j != i) others *= s[static_cast<std::size_t>(j)];
        const double gi = kPi * c[static_cast<std::size_t>(i)] * others;
        g2 += gi * gi;
    }
    return {prod, std::sqrt(g2)};
}

/// Per-block running sums of several estimators, merged in block order.
struct Moments {
    std::vector<double> sum;
    std::vector<double> sum_sq;

    explicit Moments(std::size_t k = 0) : sum(k, 0.0), sum_sq(k, 0.0) {}
    void add(std::size_t i, double v) {
        sum[i] += v;
        sum_sq[i] += v * v;
    }
    void merge(const Moments& o) {
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += o.sum[i];
            sum_sq[i] += o.sum_sq[i];
        }
    }
    AreaEstimate estimate(std::size_t i, std::uint64_t n) const {
        AreaEstimate e;
        e.samples_used = n;
        const double nn = static_cast<double>(n);
        e.value = sum[i] / nn;
        if (n > 1) {
            const double var = std::max(0.0, (sum_sq[i] - nn * e.value * e.value) / (nn - 1.0));
            e.std_error = std::sqrt(var / nn);
        }
        return e;
    }
};

/**
 * Draws mc.samples uniform points in blocks of kBlockSize. Block b uses the
 * stream Rng(mc.seed, b), so the outcome depends on neither mc.jobs nor thread
 * timing. visit(point, moments) accumulates one sample.
 */
template <class Visit>
Moments sample_blocks(int d, std::size_t estimators, const MCConfig& mc, Visit&& visit) {
    if (mc.samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
    const std::uint64_t blocks = (mc.samples + kBlockSize - 1) / kBlockSize;
    std::vector<Moments> per_block(blocks, Moments(estimators));
    std::vector<std::exception_ptr> errors(blocks);
    const unsigned jobs = std::max(1U, std::min<unsigned>(mc.jobs, static_cast<unsigned>(blocks)));

    auto worker = [&](unsigned offset) {
        std::array<double, kMaxScanDim> x{};
        for (std::uint64_t b = offset; b < blocks; b += jobs) {
            try {
                Rng rng(mc.seed, b);
                const std::uint64_t n = std::min(kBlockSize, mc.samples - b * kBlockSize);
                for (std::uint64_t i = 0; i < n; ++i) {
                    for (int s = 0; s < d; ++s) x[static_cast<std::size_t>(s)] = rng.uniform01();
                    visit(x.data(), per_block[b]);
                }
            } catch (...) {
                errors[b] = std::current_exception();
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

    Moments total(estimators);
    for (const auto& m : per_block) total.merge(m);
    return total;
}

}  // namespace

double phi(std::span<const double> x) {
    double prod = 1.0;
    for (double xi : x) prod *= std::sin(kPi * wrap01(xi));
    return prod;
}

void phi_gradient(std::span<const double> x, std::span<double> grad) {
    if (grad.size() != x.size()) throw Error(ErrorCode::InvalidArgument, "gradient buffer has the wrong length");
    for (std::size_t i = 0; i < x.size(); ++i) {
        double g = kPi * std::cos(kPi * wrap01(x[i]));
        for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i) g *= std::sin(kPi * wrap01(x[j]));
        grad[i] = g;
    }
}

double phi_gradient_norm(std::span<const double> x) {
    std::vector<double> g(x.size());
    phi_gradient(x, g);
    double s = 0.0;
    for (double gi : g) s += gi * gi;
    return std::sqrt(s);
}

AreaEstimate estimate_volume(const LevelBody& body, const MCConfig& mc) {
    check_dim(body.d, kMaxScanDim);
    check_threshold(body.t);
    const auto m = sample_blocks(body.d, 1, mc, [&](const double* x, Moments& acc) {
        acc.add(0, phi_and_gradient_norm(x, body.d).first >= body.t ? 1.0 : 0.0);
    });
    return m.estimate(0, mc.samples);
}

AreaEstimate estimate_surface(const LevelBody& body, const MCConfig& mc) {
    check_dim(body.d, kMaxScanDim);
    check_threshold(body.t);
    const double eps = mc.strip_epsilon;
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "strip width must be positive");
    if (body.t + eps >= 1.0) throw Error(ErrorCode::DegenerateStrip, "t + eps must stay below 1");
    const auto m = sample_blocks(body.d, 1, mc, [&](const double* x, Moments& acc) {
        const auto [value, grad] = phi_and_gradient_norm(x, body.d);
        acc.add(0, (value >= body.t && value < body.t + eps) ? grad / eps : 0.0);
    });
    return m.estimate(0, mc.samples);
}

RatioScan best_ratio_scan(int d, std::span<const double> t_grid, const MCConfig& mc) {
    check_dim(d, kMaxScanDim);
    if (t_grid.empty()) throw Error(ErrorCode::InvalidArgument, "threshold grid is empty");
    const double eps = mc.strip_epsilon;
    for (double t : t_grid) {
        check_threshold(t);
        if (t + eps >= 1.0) throw Error(ErrorCode::DegenerateStrip, "t + eps must stay below 1 for every grid point");
    }
    const std::size_t k = t_grid.size();
    // Estimators 0..k-1: volume indicators; k..2k-1: strip terms; 2k..3k-1: their products (for covariance).
    const auto m = sample_blocks(d, 3 * k, mc, [&](const double* x, Moments& acc) {
        const auto [value, grad] = phi_and_gradient_norm(x, d);
        for (std::size_t i = 0; i < k; ++i) {
            const double t = t_grid[i];
            const bool inside = value >= t;
            const double strip = (inside && value < t + eps) ? grad / eps : 0.0;
            acc.add(i, inside ? 1.0 : 0.0);
            acc.add(k + i, strip);
            acc.add(2 * k + i, inside ? strip : 0.0);
        }
    });

    RatioScan scan;
    scan.d = d;
    scan.bound = 2.0 * kPi * std::sqrt(static_cast<double>(d));
    const double n = static_cast<double>(mc.samples);
    for (std::size_t i = 0; i < k; ++i) {
        RatioPoint p;
        p.t = t_grid[i];
        p.volume = m.estimate(i, mc.samples);
        p.surface = m.estimate(k + i, mc.samples);
        p.ratio = p.surface.value / p.volume.value;
        // Delta method for S/V with the sample covariance of the two estimators.
        const double cov = (m.sum[2 * k + i] / n - p.surface.value * p.volume.value) / n;
        const double rel2 = std::pow(p.surface.std_error / p.surface.value, 2) +
                            std::pow(p.volume.std_error / p.volume.value, 2) -
                            2.0 * cov / (p.surface.value * p.volume.value);
        p.ratio_std_error = std::abs(p.ratio) * std::sqrt(std::max(0.0, rel2));
        if (!std::isfinite(p.ratio)) p.ratio_std_error = 0.0;
        if (scan.points.empty() || p.ratio < scan.best_ratio) {
            scan.best_ratio = p.ratio;
            scan.best_t = p.t;
            scan.best_ratio_std_error = p.ratio_std_error;
        }
        scan.points.push_back(p);
    }
    scan.bound_satisfied = scan.best_ratio <= scan.bound + 3.0 * scan.best_ratio_std_error;
    return scan;
}

SpineAreaEstimate estimate_spine_area(int d, double t, std::size_t max_shifts, const MCConfig& mc) {
    check_dim(d, kMaxSpineDim);
    check_threshold(t);
    const double eps = mc.strip_epsilon;
    if (t + eps >= 1.0) throw Error(ErrorCode::DegenerateStrip, "t + eps must stay below 1");
    if (mc.coverage_samples == 0) throw Error(ErrorCode::InvalidArgument, "coverage sample count must be positive");

    SpineAreaEstimate out;
    out.volume_estimate = estimate_volume({d, t}, mc).value;
    if (out.volume_estimate <= 0.0) throw Error(ErrorCode::CoverageFailed, "level body has zero estimated volume");
    out.shift_cap = max_shifts != 0
                        ? max_shifts
                        : static_cast<std::size_t>(10.0 * std::ceil(1.0 / out.volume_estimate) *
                                                   std::log(static_cast<double>(mc.coverage_samples)));

    // Coverage: shifts are appended until every coverage point lies in some D_i.
    const auto ud = static_cast<std::size_t>(d);
    Rng coverage_rng(mc.seed, std::uint64_t{1} << 62);
    std::vector<double> pending(mc.coverage_samples * ud);
    for (auto& x : pending) x = coverage_rng.uniform01();
    Rng shift_rng(mc.seed, (std::uint64_t{1} << 62) + 1);
    std::array<double, kMaxSpineDim> y{};
    while (!pending.empty()) {
        if (out.shifts.size() >= out.shift_cap)
            throw Error(ErrorCode::CoverageFailed, std::to_string(pending.size() / ud) + " coverage points still uncovered after " +
                                                       std::to_string(out.shift_cap) + " shifts");
        std::vector<double> v(ud);
        for (auto& vi : v) vi = shift_rng.uniform01();
        std::size_t kept = 0;
        for (std::size_t p = 0; p < pending.size(); p += ud) {
            for (std::size_t s = 0; s < ud; ++s) y[s] = wrap01(pending[p + s] - v[s]);
            if (phi_and_gradient_norm(y.data(), d).first >= t) continue;
            std::copy_n(pending.begin() + static_cast<std::ptrdiff_t>(p), ud, pending.begin() + static_cast<std::ptrdiff_t>(kept));
            kept += ud;
        }
        pending.resize(kept);
        out.shifts.push_back(std::move(v));
    }

    // Each sample contributes through the first D_i containing it: the strip term if it sits in
    // that body's inner strip, and nothing from later bodies.
    const auto& shifts = out.shifts;
    const auto m = sample_blocks(d, 1, mc, [&](const double* x, Moments& acc) {
        std::array<double, kMaxSpineDim> z{};
        for (const auto& v : shifts) {
            for (std::size_t s = 0; s < ud; ++s) z[s] = wrap01(x[s] - v[s]);
            const auto [value, grad] = phi_and_gradient_norm(z.data(), d);
            if (value < t) continue;
            acc.add(0, value < t + eps ? grad / eps : 0.0);
            return;
        }
        acc.add(0, 0.0);
    });
    out.area = m.estimate(0, mc.samples);
    return out;
}

double kappa(int d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "kappa needs d >= 1");
    const double dd = static_cast<double>(d);
    const double g = std::tgamma(1.0 + dd / 2.0);
    const double inv_root = std::isfinite(g) ? std::pow(g, -1.0 / dd) : std::exp(-std::lgamma(1.0 + dd / 2.0) / dd);
    return dd * std::sqrt(kPi) * inv_root;
}

}  // namespace spines::continuous
