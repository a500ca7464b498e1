#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace spines::continuous {

/// phi(x) = prod_i sin(pi x_i), extended periodically (coordinates taken mod 1).
double phi(std::span<const double> x);
/// Gradient of phi at x, written into grad (same length as x).
void phi_gradient(std::span<const double> x, std::span<double> grad);
double phi_gradient_norm(std::span<const double> x);

/// D_t = {x in [0,1]^d : phi(x) >= t}.
struct LevelBody {
    int d = 1;
    double t = 0.5;
};

struct MCConfig {
    std::uint64_t samples = 1'000'000;
    double strip_epsilon = 1e-3;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    /// Points used by the spine-area coverage test.
    std::uint64_t coverage_samples = 1'000'000;
};

struct AreaEstimate {
    double value = 0;
    double std_error = 0;
    std::uint64_t samples_used = 0;
};

/// Fraction of uniform samples with phi >= t.
AreaEstimate estimate_volume(const LevelBody& body, const MCConfig& mc);

/// Coarea strip estimator (1/eps) E[|grad phi| 1{t <= phi < t + eps}]; bias is O(eps).
AreaEstimate estimate_surface(const LevelBody& body, const MCConfig& mc);

struct RatioPoint {
    double t = 0;
    AreaEstimate volume;
    AreaEstimate surface;
    double ratio = 0;
    double ratio_std_error = 0;
};

struct RatioScan {
    int d = 1;
    double best_t = 0;
    double best_ratio = 0;
    double best_ratio_std_error = 0;
    double bound = 0;  ///< 2 pi sqrt(d)
    bool bound_satisfied = false;
    std::vector<RatioPoint> points;
};

inline constexpr int kMaxScanDim = 6;
inline constexpr int kMaxSpineDim = 3;

/**
 * Surface/volume over a grid of thresholds using one shared sample stream.
 * The minimum is an upper bound on the Dirichlet Cheeger constant of the
 * cube restricted to level bodies; it is compared with 2 pi sqrt(d) plus three
 * standard errors.
 */
RatioScan best_ratio_scan(int d, std::span<const double> t_grid, const MCConfig& mc);

struct SpineAreaEstimate {
    AreaEstimate area;
    std::vector<std::vector<double>> shifts;
    double volume_estimate = 0;
    std::size_t shift_cap = 0;
};

/**
 * Area of S = union_i (boundary(D_i) minus earlier D_j) for random shifts D_i = v_i + D_t.
 * Shifts are drawn until every coverage sample point lies in some D_i; the
 * area is estimated with the inner coarea strip of each D_i restricted to
 * points not covered by an earlier D_j. max_shifts = 0 uses the default cap
 * 10 ceil(1 / Vol(D_t)) ln(coverage_samples).
 */
SpineAreaEstimate estimate_spine_area(int d, double t, std::size_t max_shifts, const MCConfig& mc);

/// kappa_d = d sqrt(pi) Gamma(1 + d/2)^{-1/d}.
double kappa(int d);

}  // namespace spines::continuous
