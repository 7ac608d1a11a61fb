#pragma once

// Grid fields, zero-padding, normalised DFTs on the Fourier lattice and spectral
// differentiation.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "ktm/error.hpp"
#include "ktm/fft.hpp"
#include "ktm/grid.hpp"

namespace ktm {

using Complex = std::complex<double>;
using Point = std::array<double, 3>;
using MultiIndex = std::vector<int>;

/// Real samples on a uniform mesh, row-major with the last axis fastest.
struct ScalarField {
    Mesh mesh;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(Mesh m) : mesh(std::move(m)), values(mesh.size(), 0.0) {}
    ScalarField(Mesh m, std::vector<double> v) : mesh(std::move(m)), values(std::move(v)) {
        if (values.size() != mesh.size()) throw InvalidArgument("ScalarField: value count does not match mesh");
    }
    explicit ScalarField(const DomainSpec& d) : ScalarField(d.mesh()) {}

    std::size_t size() const noexcept { return values.size(); }
    std::size_t dim() const noexcept { return mesh.dim(); }
    double& operator[](std::size_t i) noexcept { return values[i]; }
    double operator[](std::size_t i) const noexcept { return values[i]; }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Fourier coefficients in engine-native (DC-first) order on the lattice of `mesh`.
struct SpectrumField {
    Mesh mesh;
    FourierGrid grid;
    std::vector<Complex> coeffs;

    /// Coefficient of lattice mode k (each k_j in [-P_j/2, P_j/2)).
    Complex at(const std::vector<long>& k) const {
        if (k.size() != grid.dim()) throw InvalidArgument("SpectrumField::at: wrong number of modes");
        std::size_t idx = 0;
        for (std::size_t j = 0; j < k.size(); ++j) idx = idx * grid.count[j] + grid.index_of_mode(j, k[j]);
        return coeffs[idx];
    }
};

/// Samples f(x) at every mesh point; unused coordinates of x are zero.
template <class F>
ScalarField sample(const Mesh& mesh, F&& f) {
    ScalarField out(mesh);
    const std::size_t d = mesh.dim();
    std::array<std::vector<double>, 3> axes;
    std::array<std::size_t, 3> n{1, 1, 1};
    for (std::size_t j = 0; j < d; ++j) {
        axes[3 - d + j] = mesh.coordinates(j);
        n[3 - d + j] = mesh.count[j];
    }
    for (std::size_t s = 0; s < 3 - d; ++s) axes[s] = {0.0};
    std::size_t idx = 0;
    Point x{};
    for (std::size_t a = 0; a < n[0]; ++a)
        for (std::size_t b = 0; b < n[1]; ++b)
            for (std::size_t c = 0; c < n[2]; ++c) {
                const std::array<double, 3> slot{axes[0][a], axes[1][b], axes[2][c]};
                for (std::size_t j = 0; j < d; ++j) x[j] = slot[3 - d + j];
                out.values[idx++] = f(x);
            }
    return out;
}

template <class F>
ScalarField sample(const DomainSpec& domain, F&& f) {
    return sample(domain.mesh(), std::forward<F>(f));
}

namespace detail {

inline std::array<std::size_t, 3> as3(const std::vector<std::size_t>& dims) {
    std::array<std::size_t, 3> n{1, 1, 1};
    const std::size_t d = dims.size();
    for (std::size_t j = 0; j < d; ++j) n[3 - d + j] = dims[j];
    return n;
}

// Copies a block of extent `block` from src (offset so) into dst (offset dso).
inline void copy_block(const double* src, const std::vector<std::size_t>& src_dims, const std::vector<std::size_t>& so,
                       double* dst, const std::vector<std::size_t>& dst_dims, const std::vector<std::size_t>& dso,
                       const std::vector<std::size_t>& block) {
    const auto sn = as3(src_dims), dn = as3(dst_dims), bn = as3(block);
    std::array<std::size_t, 3> s0{0, 0, 0}, d0{0, 0, 0};
    const std::size_t d = src_dims.size();
    for (std::size_t j = 0; j < d; ++j) {
        s0[3 - d + j] = so[j];
        d0[3 - d + j] = dso[j];
    }
    for (std::size_t a = 0; a < bn[0]; ++a)
        for (std::size_t b = 0; b < bn[1]; ++b) {
            const double* sp = src + ((a + s0[0]) * sn[1] + (b + s0[1])) * sn[2] + s0[2];
            double* dp = dst + ((a + d0[0]) * dn[1] + (b + d0[1])) * dn[2] + d0[2];
            std::copy(sp, sp + bn[2], dp);
        }
}

inline void check_plan_matches(const Mesh& mesh, const PaddingPlan& plan) {
    if (plan.dim() != mesh.dim()) throw InvalidArgument("padding plan dimension does not match field");
    for (std::size_t j = 0; j < mesh.dim(); ++j) {
        const double expect_n = plan.factor[j] * static_cast<double>(mesh.count[j]);
        const double expect_a = plan.factor[j] * mesh.half_width[j];
        if (std::abs(expect_n - static_cast<double>(plan.padded_count[j])) > 1e-9 ||
            std::abs(expect_a - plan.padded_half_width[j]) > 1e-12 * std::max(1.0, expect_a))
            throw InvalidArgument("padding plan is inconsistent with the field's mesh");
    }
}

inline std::vector<std::size_t> centred_offset(const std::vector<std::size_t>& outer,
                                               const std::vector<std::size_t>& inner) {
    std::vector<std::size_t> off(outer.size());
    for (std::size_t j = 0; j < outer.size(); ++j) off[j] = (outer[j] - inner[j]) / 2;
    return off;
}

/// Per-axis tables of physical wavenumbers and Nyquist flags in engine order.
struct WaveTables {
    std::array<std::vector<double>, 3> k;
    std::array<std::vector<char>, 3> nyquist;
};

inline WaveTables wave_tables(const FourierGrid& grid) {
    WaveTables t;
    for (std::size_t j = 0; j < grid.dim(); ++j) {
        const std::size_t p = grid.count[j];
        t.k[j].resize(p);
        t.nyquist[j].assign(p, 0);
        for (std::size_t i = 0; i < p; ++i) t.k[j][i] = grid.wavenumber(j, grid.mode_of_index(j, i));
        t.nyquist[j][p / 2] = 1;
    }
    return t;
}

/// Embeds `field` at the centre of the padded box, applies a Fourier multiplier on the
/// padded lattice with a real-to-complex transform pair and restricts the result back.
///
/// mult(full_index, k, nyquist) returns the complex factor for the mode whose
/// engine-native flat index on the full padded lattice is full_index.
template <class Mult>
ScalarField padded_spectral_apply(const ScalarField& field, const PaddingPlan& plan, Mult&& mult) {
    check_plan_matches(field.mesh, plan);
    const auto& dims = plan.padded_count;
    const std::size_t d = dims.size();
    const std::size_t total = plan.padded_size();

    fft::Buffer<double> real(total);
    fft::Buffer<Complex> spec(fft::half_spectrum_size(dims));
    const auto offset = centred_offset(dims, field.mesh.count);
    copy_block(field.values.data(), field.mesh.count, std::vector<std::size_t>(d, 0), real.data(), dims, offset,
               field.mesh.count);

    {
        auto fwd = fft::plan_r2c(dims, real.data(), spec.data());
        fwd.execute();
    }

    const WaveTables tab = wave_tables(plan.fourier_grid());
    const auto n3 = as3(dims);
    const std::size_t half = n3[2] / 2 + 1;
    const std::size_t lead = 3 - d;  // number of padded leading slots
    std::array<double, 3> k{0.0, 0.0, 0.0};
    std::array<bool, 3> nyq{false, false, false};
    std::size_t h = 0;
    for (std::size_t a = 0; a < n3[0]; ++a) {
        if (lead == 0) {
            k[0] = tab.k[0][a];
            nyq[0] = tab.nyquist[0][a];
        }
        for (std::size_t b = 0; b < n3[1]; ++b) {
            if (lead <= 1) {
                k[1 - lead] = tab.k[1 - lead][b];
                nyq[1 - lead] = tab.nyquist[1 - lead][b];
            }
            for (std::size_t c = 0; c < half; ++c, ++h) {
                k[d - 1] = tab.k[d - 1][c];
                nyq[d - 1] = tab.nyquist[d - 1][c];
                const std::size_t full = (a * n3[1] + b) * n3[2] + c;
                spec[h] *= mult(full, k, nyq);
            }
        }
    }

    {
        auto inv = fft::plan_c2r(dims, spec.data(), real.data());
        inv.execute();
    }

    ScalarField out(field.mesh);
    const double scale = 1.0 / static_cast<double>(total);
    copy_block(real.data(), dims, offset, out.values.data(), field.mesh.count, std::vector<std::size_t>(d, 0),
               field.mesh.count);
    for (double& v : out.values) v *= scale;
    return out;
}

}  // namespace detail

/// Places the field in the centre of the padded box; all other samples are zero.
inline ScalarField zero_pad_embed(const ScalarField& field, const PaddingPlan& plan) {
    detail::check_plan_matches(field.mesh, plan);
    ScalarField out(plan.padded_mesh());
    const auto offset = detail::centred_offset(plan.padded_count, field.mesh.count);
    detail::copy_block(field.values.data(), field.mesh.count, std::vector<std::size_t>(field.dim(), 0),
                       out.values.data(), out.mesh.count, offset, field.mesh.count);
    return out;
}

/// Extracts the centred block of a padded field that covers `domain`.
inline ScalarField restrict(const ScalarField& padded, const DomainSpec& domain) {
    const Mesh target = domain.mesh();
    if (padded.dim() != target.dim()) throw InvalidArgument("restrict: dimension mismatch");
    for (std::size_t j = 0; j < target.dim(); ++j) {
        if (padded.mesh.count[j] < target.count[j] || (padded.mesh.count[j] - target.count[j]) % 2 != 0)
            throw InvalidArgument("restrict: padded grid does not contain the target grid");
        if (std::abs(padded.mesh.spacing(j) - target.spacing(j)) > 1e-12 * target.spacing(j))
            throw InvalidArgument("restrict: mesh spacings differ");
    }
    ScalarField out(target);
    const auto offset = detail::centred_offset(padded.mesh.count, target.count);
    detail::copy_block(padded.values.data(), padded.mesh.count, offset, out.values.data(), target.count,
                       std::vector<std::size_t>(target.dim(), 0), target.count);
    return out;
}

namespace detail {

// (-1)^{sum_j k_j} for the engine-native flat index, relating the engine's DFT (origin
// at the first sample) to coefficients referenced to the box centre.
inline std::vector<double> centre_phase(const FourierGrid& grid) {
    std::vector<double> phase(grid.size());
    const auto n3 = as3(grid.count);
    const std::size_t d = grid.dim();
    std::size_t idx = 0;
    for (std::size_t a = 0; a < n3[0]; ++a)
        for (std::size_t b = 0; b < n3[1]; ++b)
            for (std::size_t c = 0; c < n3[2]; ++c) {
                const std::array<std::size_t, 3> slot{a, b, c};
                long s = 0;
                for (std::size_t j = 0; j < d; ++j) s += grid.mode_of_index(j, slot[3 - d + j]);
                phase[idx++] = (s % 2 == 0) ? 1.0 : -1.0;
            }
    return phase;
}

}  // namespace detail

/// Coefficients c_k = (1/prod P_j) sum_p f(z_p) e^{-i k.z_p} with z_p the mesh points.
inline SpectrumField forward_dft(const ScalarField& field) {
    if (!field.all_finite()) throw InvalidArgument("forward_dft: non-finite input");
    FourierGrid grid(field.mesh);
    const std::size_t n = field.size();
    fft::Buffer<Complex> in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = field.values[i];
    auto plan = fft::plan_c2c(field.mesh.count, in.data(), out.data(), FFTW_FORWARD);
    plan.execute();
    const auto phase = detail::centre_phase(grid);
    SpectrumField s{field.mesh, grid, std::vector<Complex>(n)};
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) s.coeffs[i] = out[i] * (scale * phase[i]);
    return s;
}

/// Synthesis f(z_p) = sum_k c_k e^{i k.z_p}; the exact inverse of forward_dft.
///
/// The imaginary residue is returned through `max_imag` when requested.
inline ScalarField inverse_dft(const SpectrumField& spectrum, double* max_imag = nullptr) {
    const std::size_t n = spectrum.coeffs.size();
    if (n != spectrum.mesh.size()) throw InvalidArgument("inverse_dft: coefficient count does not match mesh");
    for (const auto& c : spectrum.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidArgument("inverse_dft: non-finite input");
    const auto phase = detail::centre_phase(spectrum.grid);
    fft::Buffer<Complex> in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = spectrum.coeffs[i] * phase[i];
    auto plan = fft::plan_c2c(spectrum.mesh.count, in.data(), out.data(), FFTW_BACKWARD);
    plan.execute();
    ScalarField f(spectrum.mesh);
    double imag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        f.values[i] = out[i].real();
        imag = std::max(imag, std::abs(out[i].imag()));
    }
    if (max_imag) *max_imag = imag;
    return f;
}

namespace detail {

inline Complex derivative_factor(const MultiIndex& alpha, const std::array<double, 3>& k,
                                 const std::array<bool, 3>& nyq) {
    Complex f{1.0, 0.0};
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        const int a = alpha[j];
        if (a == 0) continue;
        if ((a % 2) && nyq[j]) return Complex{0.0, 0.0};
        for (int r = 0; r < a; ++r) f *= Complex{0.0, k[j]};
    }
    return f;
}

inline void check_alpha(const MultiIndex& alpha, std::size_t d) {
    if (alpha.size() != d) throw InvalidArgument("derivative multi-index has the wrong length");
    int order = 0;
    for (int a : alpha) {
        if (a < 0) throw InvalidArgument("derivative orders must be non-negative");
        order += a;
    }
    if (order > 4) throw InvalidArgument("derivative order above 4 is not supported");
}

}  // namespace detail

/// d^alpha of the trigonometric interpolant of the zero-padded field, restricted back to
/// the field's mesh. Odd-order axes drop their Nyquist mode.
inline ScalarField spectral_derivative(const ScalarField& field, const PaddingPlan& plan, const MultiIndex& alpha) {
    detail::check_alpha(alpha, field.dim());
    return detail::padded_spectral_apply(field, plan, [&](std::size_t, const auto& k, const auto& nyq) {
        return detail::derivative_factor(alpha, k, nyq);
    });
}

/// Trivial padding (S_j = 1): spectral operators act on the periodic interpolant of the
/// field on its own mesh.
inline PaddingPlan identity_padding(const Mesh& mesh) {
    PaddingPlan p;
    p.factor.assign(mesh.dim(), 1.0);
    p.padded_count = mesh.count;
    p.padded_half_width = mesh.half_width;
    return p;
}

inline ScalarField spectral_derivative(const ScalarField& field, const MultiIndex& alpha) {
    return spectral_derivative(field, identity_padding(field.mesh), alpha);
}

/// Directional second derivative (n . grad)(m . grad) of the padded interpolant.
inline ScalarField directional_second_derivative(const ScalarField& field, const PaddingPlan& plan,
                                                 const std::vector<double>& n, const std::vector<double>& m) {
    const std::size_t d = field.dim();
    if (n.size() != d || m.size() != d) throw InvalidArgument("direction vectors must match the field dimension");
    return detail::padded_spectral_apply(field, plan, [&](std::size_t, const auto& k, const auto& nyq) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                if (i != j && (nyq[i] || nyq[j])) continue;
                s += n[i] * m[j] * k[i] * k[j];
            }
        return Complex{-s, 0.0};
    });
}

/// a*x + b*y on a common mesh.
inline ScalarField linear_combination(double a, const ScalarField& x, double b, const ScalarField& y) {
    if (!(x.mesh == y.mesh)) throw InvalidArgument("linear_combination: meshes differ");
    ScalarField out(x.mesh);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = a * x.values[i] + b * y.values[i];
    return out;
}

}  // namespace ktm
