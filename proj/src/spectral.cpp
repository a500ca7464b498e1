#include "spines/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace spines {

namespace {

/// Residue r in {0..m-1} -> index into the symmetric half: min(r, m - r), 0 for the zero label.
int symmetric_class(int r, int m) { return r == 0 ? 0 : std::min(r, m - r); }

}  // namespace

SineProfile::SineProfile(int m) {
    if (m < 3) throw Error(ErrorCode::InvalidArgument, "sine profile needs m >= 3 (got " + std::to_string(m) + ")");
    values_.resize(static_cast<std::size_t>(m));
    // sin(pi j/m) = sin(pi (m-j)/m); evaluating on the folded index makes the symmetry bit-exact.
    for (int r = 0; r < m; ++r) {
        const int k = symmetric_class(r, m);
        values_[static_cast<std::size_t>(r)] = k == 0 ? 0.0 : std::sin(std::numbers::pi * k / m);
    }
}

double SineProfile::at_label(int j) const {
    if (j < 1 || j > m()) throw Error(ErrorCode::InvalidArgument, "label must lie in 1..m");
    return values_[static_cast<std::size_t>(j % m())];
}

SineProfile sine_profile(int m) { return SineProfile(m); }

TensorProfile::TensorProfile(SineProfile base, int d) : base_(std::move(base)), d_(d) {
    const int m = base_.m();
    const std::size_t n = checked_vertex_count(m, d);
    squared_.resize(n);

    std::vector<double> sq(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) sq[static_cast<std::size_t>(r)] = base_.at_residue(r) * base_.at_residue(r);

    // Multiply in sorted class order so vertices that are coordinate permutations
    // or reflections of each other get bit-identical values.
    std::array<int, kMaxDim> cls{};
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t rest = v;
        for (int s = 0; s < d; ++s) {
            cls[static_cast<std::size_t>(s)] = symmetric_class(static_cast<int>(rest % static_cast<std::size_t>(m)), m);
            rest /= static_cast<std::size_t>(m);
        }
        std::sort(cls.begin(), cls.begin() + d);
        double prod = 1.0;
        for (int s = 0; s < d; ++s) prod *= sq[static_cast<std::size_t>(cls[static_cast<std::size_t>(s)])];
        squared_[v] = prod;
    }
}

double TensorProfile::value_at(VertexId v) const {
    const int m = base_.m();
    double prod = 1.0;
    std::size_t rest = v;
    for (int s = 0; s < d_; ++s) {
        prod *= base_.at_residue(static_cast<int>(rest % static_cast<std::size_t>(m)));
        rest /= static_cast<std::size_t>(m);
    }
    return prod;
}

double TensorProfile::value_at(const TorusVertex& v) const {
    if (v.coords.size() != static_cast<std::size_t>(d_)) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
    double prod = 1.0;
    for (int c : v.coords) prod *= base_.at_residue(c);
    return prod;
}

SpectralConstants constants(int m, int d) {
    if (m < 3) throw Error(ErrorCode::InvalidArgument, "m must be >= 3");
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
    SpectralConstants c;
    c.m = m;
    c.d = d;
    const double pi = std::numbers::pi;
    const double three_d = std::pow(3.0, d);
    c.lambda = 2.0 * std::cos(pi / m);
    c.Lambda = std::pow(1.0 + c.lambda, d) - 1.0;
    c.rayleigh_inf = three_d - std::pow(1.0 + c.lambda, d);
    const double s = std::sin(pi / (2.0 * m));
    c.rayleigh_one = 4.0 * d * s * s;
    c.mu = std::sqrt(2.0 * (three_d - 1.0) * c.rayleigh_inf);
    c.fraction = 2.0 * c.mu / (three_d - 1.0);
    return c;
}

double check_path_eigen(int m) {
    const SineProfile x(m);
    const auto n = static_cast<std::size_t>(m);
    // Labels 1..m in cycle order; index i holds label i+1, so the last row/column is label m.
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        a[i * n + j] = a[j * n + i] = 1.0;
    }
    for (std::size_t k = 0; k < n; ++k) a[(n - 1) * n + k] = a[k * n + (n - 1)] = 0.0;

    const double lambda = 2.0 * std::cos(std::numbers::pi / m);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = 0.0;
        for (std::size_t k = 0; k < n; ++k) ax += a[i * n + k] * x.at_label(static_cast<int>(k) + 1);
        residual = std::max(residual, std::abs(ax - lambda * x.at_label(static_cast<int>(i) + 1)));
    }
    return residual;
}

double rayleigh_quotient(const TorusGraphSpec& spec, std::span<const double> f) {
    if (f.size() != spec.vertex_count()) throw Error(ErrorCode::InvalidArgument, "vertex function has wrong length");
    double norm = 0.0;
    for (double x : f) norm += x * x;
    if (norm == 0.0) throw Error(ErrorCode::ZeroVector, "vertex function vanishes everywhere");
    double form = 0.0;
    spec.for_each_edge([&](VertexId u, VertexId v) {
        const double diff = f[u] - f[v];
        form += diff * diff;
    });
    return form / norm;
}

double rayleigh_quotient(const TorusGraphSpec& spec, const TensorProfile& f) {
    if (f.base().m() != spec.m() || f.d() != spec.d())
        throw Error(ErrorCode::InvalidArgument, "profile does not match the graph's (m, d)");
    std::vector<double> values(spec.vertex_count());
    for (VertexId v = 0; v < values.size(); ++v) values[v] = f.value_at(v);
    return rayleigh_quotient(spec, values);
}

double closed_form_rayleigh(const TorusGraphSpec& spec) {
    const auto c = constants(spec.m(), spec.d());
    return spec.power() == Power::Inf ? c.rayleigh_inf : c.rayleigh_one;
}

VertexSet dirichlet_set(const TorusGraphSpec& spec) {
    VertexSet u(spec.vertex_count());
    for (VertexId v = 0; v < spec.vertex_count(); ++v)
        for (int s = 0; s < spec.d(); ++s)
            if (spec.coord(v, s) == 0) {
                u.insert(v);
                break;
            }
    return u;
}

}  // namespace spines
