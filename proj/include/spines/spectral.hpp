#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spines/torus_graph.hpp"

namespace spines {

/**
 * The profile sin(pi j / m) on the cycle, stored by residue.
 *
 * Labels j in {1, ..., m} map to residues j mod m, so residue 0
 * carries label m and holds the single zero entry.
 */
class SineProfile {
public:
    explicit SineProfile(int m);

    int m() const noexcept { return static_cast<int>(values_.size()); }
    double at_residue(int r) const { return values_.at(static_cast<std::size_t>(r)); }
    /// Value for label j in {1, ..., m}.
    double at_label(int j) const;
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

SineProfile sine_profile(int m);

/// Tensor power of a sine profile: value_at(v) = prod_s base(v_s).
class TensorProfile {
public:
    TensorProfile(SineProfile base, int d);

    const SineProfile& base() const noexcept { return base_; }
    int d() const noexcept { return d_; }

    double value_at(VertexId v) const;
    double value_at(const TorusVertex& v) const;

    /// Squared values indexed by linear vertex id, computed at construction.
    const std::vector<double>& squared_values() const noexcept { return squared_; }

private:
    SineProfile base_;
    int d_;
    std::vector<double> squared_;
};

struct SpectralConstants {
    int m = 0;
    int d = 0;
    double lambda = 0;        ///< 2 cos(pi/m), top Dirichlet eigenvalue of the path
    double Lambda = 0;        ///< (1 + lambda)^d - 1
    double mu = 0;            ///< sqrt(2 (3^d - 1) rayleigh_inf)
    double rayleigh_inf = 0;  ///< 3^d - (1 + 2 cos(pi/m))^d
    double rayleigh_one = 0;  ///< 4 d sin^2(pi / 2m)
    double fraction = 0;      ///< 2 mu / (3^d - 1)
};

SpectralConstants constants(int m, int d);

/// ||A' x - 2cos(pi/m) x||_inf with A' the cycle adjacency with the last row and column zeroed.
double check_path_eigen(int m);

/// sum over edges (f(u) - f(v))^2 / sum over vertices f(v)^2, streamed over edges.
double rayleigh_quotient(const TorusGraphSpec& spec, const TensorProfile& f);
double rayleigh_quotient(const TorusGraphSpec& spec, std::span<const double> f);

/// Closed-form Rayleigh quotient of the sine tensor on spec.
double closed_form_rayleigh(const TorusGraphSpec& spec);

/// The set U where the sine tensor vanishes: vertices with some coordinate at residue 0.
VertexSet dirichlet_set(const TorusGraphSpec& spec);

}  // namespace spines
