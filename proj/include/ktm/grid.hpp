#pragma once

// Domains, uniform meshes, Fourier grids and zero-padding factors.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ktm/error.hpp"

namespace ktm {

inline constexpr std::size_t kMaxDim = 3;

/// Uniform cell-vertex mesh on the box prod_j [-a_j, a_j) with count_j points per axis.
///
/// Point p on axis j sits at (-count_j/2 + p) * 2 a_j / count_j. Storage order for
/// fields on the mesh is row-major, the last axis varying fastest.
struct Mesh {
    std::vector<double> half_width;
    std::vector<std::size_t> count;

    std::size_t dim() const noexcept { return count.size(); }

    std::size_t size() const noexcept {
        return std::accumulate(count.begin(), count.end(), std::size_t{1},
                               [](std::size_t a, std::size_t b) { return a * b; });
    }

    double spacing(std::size_t axis) const {
        return 2.0 * half_width.at(axis) / static_cast<double>(count.at(axis));
    }

    double coordinate(std::size_t axis, std::size_t p) const {
        const auto n = static_cast<double>(count[axis]);
        return (-n / 2.0 + static_cast<double>(p)) * spacing(axis);
    }

    std::vector<double> coordinates(std::size_t axis) const {
        std::vector<double> out(count.at(axis));
        for (std::size_t p = 0; p < out.size(); ++p) out[p] = coordinate(axis, p);
        return out;
    }

    friend bool operator==(const Mesh&, const Mesh&) = default;
};

/// Physical computational box R_L^gamma = prod_j [-L gamma_j, L gamma_j] with N_j points per axis.
///
/// Stored canonically as per-axis half-widths; L is the first half-width and
/// gamma_j = half_width_j / L.
class DomainSpec {
public:
    DomainSpec(double L, std::vector<double> gamma, std::vector<std::size_t> N) : count_(std::move(N)) {
        const std::size_t d = count_.size();
        if (d < 1 || d > kMaxDim) throw InvalidArgument("DomainSpec: dimension must be 1, 2 or 3");
        if (gamma.size() != d) throw InvalidArgument("DomainSpec: gamma and N must have the same length");
        if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("DomainSpec: L must be positive and finite");
        if (gamma[0] != 1.0) throw InvalidArgument("DomainSpec: gamma_1 must equal 1");
        half_width_.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (!(gamma[j] > 0.0 && gamma[j] <= 1.0))
                throw InvalidArgument("DomainSpec: anisotropy factors must lie in (0, 1]");
            if (count_[j] < 2 || count_[j] % 2 != 0)
                throw InvalidArgument("DomainSpec: grid counts must be even and >= 2");
            half_width_[j] = L * gamma[j];
        }
    }

    static DomainSpec isotropic(std::size_t d, double L, std::size_t N) {
        return DomainSpec(L, std::vector<double>(d, 1.0), std::vector<std::size_t>(d, N));
    }

    /// Box of half-widths L*gamma sampled with spacing h*gamma_j on every axis (N_j = 2L/h).
    static DomainSpec from_spacing(double L, std::vector<double> gamma, double h) {
        const auto n = static_cast<std::size_t>(std::llround(2.0 * L / h));
        if (std::abs(static_cast<double>(n) * h - 2.0 * L) > 1e-9 * L)
            throw InvalidArgument("DomainSpec: 2L/h must be an integer");
        std::vector<std::size_t> counts(gamma.size(), n);
        return DomainSpec(L, std::move(gamma), std::move(counts));
    }

    std::size_t dim() const noexcept { return count_.size(); }
    double base_half_width() const noexcept { return half_width_[0]; }
    double half_width(std::size_t axis) const { return half_width_.at(axis); }
    double gamma(std::size_t axis) const { return half_width_.at(axis) / half_width_[0]; }
    std::vector<double> gammas() const {
        std::vector<double> g(dim());
        for (std::size_t j = 0; j < dim(); ++j) g[j] = gamma(j);
        return g;
    }
    std::size_t count(std::size_t axis) const { return count_.at(axis); }
    const std::vector<std::size_t>& counts() const noexcept { return count_; }
    double spacing(std::size_t axis) const { return 2.0 * half_width(axis) / static_cast<double>(count(axis)); }

    std::size_t total_points() const noexcept { return mesh().size(); }

    Mesh mesh() const { return Mesh{half_width_, count_}; }

    /// Diameter of the box, i.e. the kernel truncation radius 2 L sqrt(sum gamma_j^2).
    double diameter() const {
        double s = 0.0;
        for (double a : half_width_) s += a * a;
        return 2.0 * std::sqrt(s);
    }

    std::string describe() const {
        std::ostringstream os;
        os.precision(17);
        os << "d=" << dim() << " L=" << base_half_width() << " gamma=(";
        for (std::size_t j = 0; j < dim(); ++j) os << (j ? "," : "") << gamma(j);
        os << ") N=(";
        for (std::size_t j = 0; j < dim(); ++j) os << (j ? "," : "") << count(j);
        os << ")";
        return os.str();
    }

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
    std::vector<double> half_width_;
    std::vector<std::size_t> count_;
};

/// Frequency lattice of a padded box: mode k_j in {-P_j/2, ..., P_j/2 - 1} has physical
/// wavenumber k_j * pi / a_j where a_j = S_j L gamma_j is the padded half-width.
///
/// Transforms store modes in engine-native (DC-first) order; index i maps to mode
/// i for i < P/2 and i - P otherwise.
struct FourierGrid {
    std::vector<std::size_t> count;
    std::vector<double> scale;

    explicit FourierGrid(const Mesh& padded) : count(padded.count), scale(padded.dim()) {
        for (std::size_t j = 0; j < padded.dim(); ++j) scale[j] = M_PI / padded.half_width[j];
    }

    std::size_t dim() const noexcept { return count.size(); }

    std::size_t size() const noexcept {
        return std::accumulate(count.begin(), count.end(), std::size_t{1},
                               [](std::size_t a, std::size_t b) { return a * b; });
    }

    long mode_of_index(std::size_t axis, std::size_t i) const {
        const auto p = static_cast<long>(count[axis]);
        const auto li = static_cast<long>(i);
        return li < p / 2 ? li : li - p;
    }

    std::size_t index_of_mode(std::size_t axis, long k) const {
        const auto p = static_cast<long>(count[axis]);
        if (k < -p / 2 || k >= p / 2) throw InvalidArgument("FourierGrid: mode outside the lattice");
        return static_cast<std::size_t>(k < 0 ? k + p : k);
    }

    double wavenumber(std::size_t axis, long k) const { return static_cast<double>(k) * scale[axis]; }
};

/// Per-axis zero-padding factors S_j with padded counts S_j N_j and truncation radius G.
struct PaddingPlan {
    std::vector<double> factor;
    std::vector<std::size_t> padded_count;
    double radius = 0.0;
    std::vector<double> padded_half_width;

    std::size_t dim() const noexcept { return factor.size(); }
    Mesh padded_mesh() const { return Mesh{padded_half_width, padded_count}; }
    FourierGrid fourier_grid() const { return FourierGrid(padded_mesh()); }
    std::size_t padded_size() const { return padded_mesh().size(); }

    friend bool operator==(const PaddingPlan&, const PaddingPlan&) = default;
};

namespace detail {

inline bool is_half_multiple(double s) {
    const double twice = 2.0 * s;
    return std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace detail

/// Padding with explicit factors. Each S_j must be a multiple of 1/2, at least 1,
/// and make S_j N_j an even integer.
inline PaddingPlan padding_from_factors(const DomainSpec& domain, const std::vector<double>& factors) {
    if (factors.size() != domain.dim()) throw InvalidArgument("padding: one factor per axis required");
    PaddingPlan plan;
    plan.factor = factors;
    plan.radius = domain.diameter();
    for (std::size_t j = 0; j < domain.dim(); ++j) {
        const double s = factors[j];
        if (!(s >= 1.0) || !detail::is_half_multiple(s))
            throw InvalidArgument("padding: factors must be multiples of 1/2 and >= 1");
        const long twice_s = std::lround(2.0 * s);
        const auto n = static_cast<long>(domain.count(j));
        if ((twice_s * n) % 4 != 0) throw InvalidArgument("padding: S_j * N_j must be an even integer");
        plan.padded_count.push_back(static_cast<std::size_t>(twice_s * n / 2));
        plan.padded_half_width.push_back(s * domain.half_width(j));
    }
    return plan;
}

/// Smallest padding that keeps the periodic image of the zero-padded density away from
/// the truncation ball: S_j = 1 + sqrt(sum_i gamma_i^2) / gamma_j.
inline std::vector<double> optimal_padding_exact(const DomainSpec& domain) {
    double s = 0.0;
    for (std::size_t i = 0; i < domain.dim(); ++i) s += domain.gamma(i) * domain.gamma(i);
    const double root = std::sqrt(s);
    std::vector<double> out(domain.dim());
    for (std::size_t j = 0; j < domain.dim(); ++j) out[j] = 1.0 + root / domain.gamma(j);
    return out;
}

/// Rounds each exact factor up to the nearest multiple of 1/2 for which S_j N_j is even.
inline PaddingPlan practical_padding(const std::vector<double>& exact, const DomainSpec& domain) {
    if (exact.size() != domain.dim()) throw InvalidArgument("padding: one factor per axis required");
    std::vector<double> factors(exact.size());
    for (std::size_t j = 0; j < exact.size(); ++j) {
        if (!(exact[j] >= 1.0)) throw InvalidArgument("padding: exact factors must be >= 1");
        // Tolerate round-off just above a half-multiple (e.g. 2.0000000000000004).
        double s = std::ceil(2.0 * exact[j] - 1e-12) / 2.0;
        const auto n = static_cast<long>(domain.count(j));
        while (s <= 64.0 && (std::lround(2.0 * s) * n) % 4 != 0) s += 0.5;
        if (s > 64.0) throw InvalidArgument("padding: no half-multiple factor <= 64 gives an even padded count");
        factors[j] = s;
    }
    return padding_from_factors(domain, factors);
}

inline PaddingPlan practical_padding(const DomainSpec& domain) {
    return practical_padding(optimal_padding_exact(domain), domain);
}

inline std::vector<std::vector<double>> mesh_points(const DomainSpec& domain) {
    const Mesh m = domain.mesh();
    std::vector<std::vector<double>> out(m.dim());
    for (std::size_t j = 0; j < m.dim(); ++j) out[j] = m.coordinates(j);
    return out;
}

}  // namespace ktm
