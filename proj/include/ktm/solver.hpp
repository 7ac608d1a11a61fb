#pragma once

// Plain kernel-truncation solves on the zero-padded box and the convolution-tensor fast
// path whose per-solve cost depends only on the physical grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "ktm/error.hpp"
#include "ktm/fft.hpp"
#include "ktm/grid.hpp"
#include "ktm/kernels.hpp"
#include "ktm/spectral.hpp"

namespace ktm {

struct KTMPlan {
    DomainSpec domain;
    PaddingPlan padding;
    TruncatedKernelFT uhat;
};

/// DFT of the wrapped convolution tensor on the 2N-per-axis grid. Per axis the wrapped
/// layout is [T_0 .. T_{N-1}, 0, T_{-N+1} .. T_{-1}].
struct ConvolutionPlan {
    DomainSpec domain;
    PaddingPlan padding;
    KernelSpec kernel;
    std::vector<std::size_t> count;  // 2 N_j
    std::vector<Complex> that;       // full spectrum, engine order

    std::size_t size() const noexcept { return that.size(); }
};

/// Convolution tensor T_n for n_j in {-N_j, ..., N_j - 1}, stored at offset n + N.
struct ConvolutionTensor {
    std::vector<std::size_t> half;  // N_j
    std::vector<double> values;     // prod 2 N_j entries

    double at(const std::vector<long>& n) const {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < half.size(); ++j) {
            const long h = static_cast<long>(half[j]);
            if (n[j] < -h || n[j] >= h) throw InvalidArgument("ConvolutionTensor: index out of range");
            idx = idx * (2 * half[j]) + static_cast<std::size_t>(n[j] + h);
        }
        return values[idx];
    }
};

enum class MemoryMode { Plain, TensorPrecompute, TensorExecute };

namespace detail {

inline PaddingPlan choose_padding(const DomainSpec& domain, const std::optional<std::vector<double>>& override_s) {
    return override_s ? padding_from_factors(domain, *override_s) : practical_padding(domain);
}

inline void check_kernel_domain(const DomainSpec& domain, const KernelSpec& kernel) {
    validate(kernel);
    if (kernel_dim(kernel) != domain.dim()) throw InvalidArgument("kernel dimension does not match the domain");
}

inline void check_density(const ScalarField& rho, const DomainSpec& domain) {
    if (!(rho.mesh == domain.mesh())) throw InvalidArgument("density is not sampled on the plan's domain");
    if (!rho.all_finite()) throw InvalidArgument("density contains non-finite values");
}

// Maps a dipolar kernel to its effective density and the radial convolution; other kernels
// pass straight through. conv(field) must return the plain convolution with the plan kernel.
template <class Conv>
ScalarField dipolar_or_plain(const KernelSpec& kernel, const ScalarField& rho, const PaddingPlan& padding, Conv&& conv) {
    if (const auto* d = std::get_if<kernel::DDI3D>(&kernel)) {
        auto eff = ddi_effective_density(rho, *d, identity_padding(rho.mesh));
        return linear_combination(eff.scale, rho, -3.0, conv(eff.field));
    }
    if (const auto* q = std::get_if<kernel::QuasiDDI2D>(&kernel)) return conv(quasi2d_effective_density(rho, *q, identity_padding(rho.mesh)));
    return conv(rho);
}

}  // namespace detail

inline KTMPlan plan_ktm(const DomainSpec& domain, const KernelSpec& kernel,
                        const std::optional<std::vector<double>>& padding_override = std::nullopt) {
    detail::check_kernel_domain(domain, kernel);
    auto padding = detail::choose_padding(domain, padding_override);
    auto uhat = uhat_grid(kernel, padding);
    return KTMPlan{domain, std::move(padding), std::move(uhat)};
}

/// U_G * field on the plan's grid, without the dipolar reformulation.
inline ScalarField convolve_ktm(const KTMPlan& plan, const ScalarField& field) {
    detail::check_density(field, plan.domain);
    if (plan.uhat.values.size() != plan.padding.padded_size()) throw InvalidArgument("plan: kernel grid size mismatch");
    // U_G is real and even, so its value at a half-spectrum index equals the full-lattice entry.
    const auto& u = plan.uhat.values;
    return detail::padded_spectral_apply(field, plan.padding,
                                         [&](std::size_t full, const auto&, const auto&) { return Complex{u[full], 0.0}; });
}

/// Potential of rho; dipolar kernels go through their effective densities.
inline ScalarField apply_ktm(const KTMPlan& plan, const ScalarField& rho) {
    detail::check_density(rho, plan.domain);
    return detail::dipolar_or_plain(plan.uhat.kernel, rho, plan.padding,
                                    [&](const ScalarField& f) { return convolve_ktm(plan, f); });
}

/// T_n = (1/prod P_j) sum_k U_G(k) e^{2 pi i k.n / P} for n_j in {-N_j, ..., N_j - 1}.
inline ConvolutionTensor convolution_tensor(const DomainSpec& domain, const TruncatedKernelFT& uhat,
                                            const PaddingPlan& padding) {
    const auto& P = padding.padded_count;
    const std::size_t d = P.size();
    const std::size_t total = padding.padded_size();
    if (uhat.values.size() != total) throw InvalidArgument("convolution_tensor: kernel grid size mismatch");

    // Inverse transform of the (real, even) kernel samples through its half spectrum.
    const auto p3 = detail::as3(P);
    const std::size_t half_last = p3[2] / 2 + 1;
    fft::Buffer<Complex> spec(fft::half_spectrum_size(P));
    {
        std::size_t h = 0;
        for (std::size_t a = 0; a < p3[0]; ++a)
            for (std::size_t b = 0; b < p3[1]; ++b)
                for (std::size_t c = 0; c < half_last; ++c, ++h) spec[h] = uhat.values[(a * p3[1] + b) * p3[2] + c];
    }
    fft::Buffer<double> t(total);
    {
        auto inv = fft::plan_c2r(P, spec.data(), t.data());
        inv.execute();
    }
    spec = fft::Buffer<Complex>();

    ConvolutionTensor out;
    out.half = domain.counts();
    std::vector<std::size_t> two(d);
    for (std::size_t j = 0; j < d; ++j) two[j] = 2 * out.half[j];
    std::size_t n_out = 1;
    for (auto v : two) n_out *= v;
    out.values.resize(n_out);

    const auto t3 = detail::as3(two);
    const auto h3 = detail::as3(out.half);
    const double scale = 1.0 / static_cast<double>(total);
    auto src = [&](std::size_t s, std::size_t i) {
        // offset index i on the 2N axis -> n = i - N -> position n mod P
        const long n = static_cast<long>(i) - static_cast<long>(h3[s]);
        const long p = static_cast<long>(p3[s]);
        return static_cast<std::size_t>(((n % p) + p) % p);
    };
    std::size_t idx = 0;
    for (std::size_t a = 0; a < t3[0]; ++a) {
        const std::size_t sa = src(0, a);
        for (std::size_t b = 0; b < t3[1]; ++b) {
            const std::size_t sb = src(1, b);
            for (std::size_t c = 0; c < t3[2]; ++c) out.values[idx++] = t[(sa * p3[1] + sb) * p3[2] + src(2, c)] * scale;
        }
    }
    return out;
}

/// Wrapped real tensor T~ on the 2N grid (zero plane at index N per axis).
inline std::vector<double> wrap_tensor(const ConvolutionTensor& T) {
    const std::size_t d = T.half.size();
    std::vector<std::size_t> two(d);
    for (std::size_t j = 0; j < d; ++j) two[j] = 2 * T.half[j];
    const auto t3 = detail::as3(two);
    const auto h3 = detail::as3(T.half);
    std::vector<double> w(T.values.size(), 0.0);
    // wrapped index i holds n = i (i < N), nothing (i = N), i - 2N (i > N); stored at n + N
    auto src = [&](std::size_t s, std::size_t i, bool& zero) -> std::size_t {
        if (t3[s] == 1) return 0;
        if (i == h3[s]) zero = true;
        return i < h3[s] ? i + h3[s] : i - h3[s];
    };
    std::size_t idx = 0;
    for (std::size_t a = 0; a < t3[0]; ++a)
        for (std::size_t b = 0; b < t3[1]; ++b)
            for (std::size_t c = 0; c < t3[2]; ++c, ++idx) {
                bool zero = false;
                const std::size_t sa = src(0, a, zero), sb = src(1, b, zero), sc = src(2, c, zero);
                w[idx] = zero ? 0.0 : T.values[(sa * t3[1] + sb) * t3[2] + sc];
            }
    return w;
}

/// Builds the plan from a wrapped real tensor (used by plan_tensor and the plan cache).
inline ConvolutionPlan tensor_plan_from_wrapped(const DomainSpec& domain, const PaddingPlan& padding,
                                                const KernelSpec& kernel, const std::vector<double>& wrapped) {
    const std::size_t d = domain.dim();
    std::vector<std::size_t> two(d);
    for (std::size_t j = 0; j < d; ++j) two[j] = 2 * domain.count(j);
    std::size_t total = 1;
    for (auto v : two) total *= v;
    if (wrapped.size() != total) throw InvalidArgument("tensor plan: wrapped tensor has the wrong size");

    fft::Buffer<double> in(total);
    std::copy(wrapped.begin(), wrapped.end(), in.begin());
    fft::Buffer<Complex> half(fft::half_spectrum_size(two));
    {
        auto fwd = fft::plan_r2c(two, in.data(), half.data());
        fwd.execute();
    }

    // Expand the half spectrum by Hermitian symmetry: X(-k) = conj X(k).
    ConvolutionPlan plan{domain, padding, kernel, two, std::vector<Complex>(total)};
    const auto t3 = detail::as3(two);
    const std::size_t hl = t3[2] / 2 + 1;
    std::size_t idx = 0;
    for (std::size_t a = 0; a < t3[0]; ++a)
        for (std::size_t b = 0; b < t3[1]; ++b)
            for (std::size_t c = 0; c < t3[2]; ++c, ++idx) {
                if (c < hl) {
                    plan.that[idx] = half[(a * t3[1] + b) * hl + c];
                } else {
                    const std::size_t na = (t3[0] - a) % t3[0], nb = (t3[1] - b) % t3[1], nc = t3[2] - c;
                    plan.that[idx] = std::conj(half[(na * t3[1] + nb) * hl + nc]);
                }
            }
    return plan;
}

inline ConvolutionPlan plan_tensor(const DomainSpec& domain, const KernelSpec& kernel,
                                   const std::optional<std::vector<double>>& padding_override = std::nullopt) {
    detail::check_kernel_domain(domain, kernel);
    auto padding = detail::choose_padding(domain, padding_override);
    std::vector<double> wrapped;
    {
        const auto uhat = uhat_grid(kernel, padding);
        wrapped = wrap_tensor(convolution_tensor(domain, uhat, padding));
    }  // padded storage released here
    return tensor_plan_from_wrapped(domain, padding, kernel, wrapped);
}

/// Plain discrete convolution with the plan's tensor (no dipolar reformulation).
inline ScalarField convolve_tensor(const ConvolutionPlan& plan, const ScalarField& field) {
    detail::check_density(field, plan.domain);
    const auto& two = plan.count;
    const std::size_t d = two.size();
    std::size_t total = 1;
    for (auto v : two) total *= v;
    if (plan.that.size() != total) throw InvalidArgument("tensor plan: spectrum has the wrong size");

    fft::Buffer<double> buf(total);
    const auto& n = field.mesh.count;
    detail::copy_block(field.values.data(), n, std::vector<std::size_t>(d, 0), buf.data(), two,
                       std::vector<std::size_t>(d, 0), n);
    fft::Buffer<Complex> spec(fft::half_spectrum_size(two));
    {
        auto fwd = fft::plan_r2c(two, buf.data(), spec.data());
        fwd.execute();
    }
    const auto t3 = detail::as3(two);
    const std::size_t hl = t3[2] / 2 + 1;
    std::size_t h = 0;
    for (std::size_t a = 0; a < t3[0]; ++a)
        for (std::size_t b = 0; b < t3[1]; ++b)
            for (std::size_t c = 0; c < hl; ++c, ++h) spec[h] *= plan.that[(a * t3[1] + b) * t3[2] + c];
    {
        auto inv = fft::plan_c2r(two, spec.data(), buf.data());
        inv.execute();
    }
    ScalarField out(field.mesh);
    detail::copy_block(buf.data(), two, std::vector<std::size_t>(d, 0), out.values.data(), n,
                       std::vector<std::size_t>(d, 0), n);
    const double scale = 1.0 / static_cast<double>(total);
    for (double& v : out.values) v *= scale;
    return out;
}

inline ScalarField apply_tensor(const ConvolutionPlan& plan, const ScalarField& rho) {
    detail::check_density(rho, plan.domain);
    return detail::dipolar_or_plain(plan.kernel, rho, plan.padding,
                                    [&](const ScalarField& f) { return convolve_tensor(plan, f); });
}

/// Phi_p = sum_q T_{p-q} rho_q by nested loops; limited to 4096 grid points.
inline ScalarField direct_convolution_oracle(const ConvolutionTensor& T, const ScalarField& rho) {
    const std::size_t total = rho.size();
    if (total > 4096) throw InvalidArgument("direct_convolution_oracle: at most 4096 grid points");
    if (T.half != rho.mesh.count) throw InvalidArgument("direct_convolution_oracle: tensor does not match the grid");
    const std::size_t d = rho.dim();
    const auto n3 = detail::as3(rho.mesh.count);
    std::vector<std::size_t> two(d);
    for (std::size_t j = 0; j < d; ++j) two[j] = 2 * T.half[j];
    const auto t3 = detail::as3(two);
    ScalarField out(rho.mesh);
    for (std::size_t p = 0; p < total; ++p) {
        const std::size_t pa = p / (n3[1] * n3[2]), pb = (p / n3[2]) % n3[1], pc = p % n3[2];
        double s = 0.0;
        for (std::size_t q = 0; q < total; ++q) {
            const std::size_t qa = q / (n3[1] * n3[2]), qb = (q / n3[2]) % n3[1], qc = q % n3[2];
            // offset storage: n + N with n = p - q
            const std::size_t ia = pa + n3[0] - qa - (t3[0] == 1 ? 1 : 0);
            const std::size_t ib = pb + n3[1] - qb - (t3[1] == 1 ? 1 : 0);
            const std::size_t ic = pc + n3[2] - qc;
            s += T.values[(ia * t3[1] + ib) * t3[2] + ic] * rho.values[q];
        }
        out.values[p] = s;
    }
    return out;
}

/// d^alpha Phi as U_G * (d^alpha rho), both paths.
inline ScalarField solve_derivative(const KTMPlan& plan, const ScalarField& rho, const MultiIndex& alpha) {
    detail::check_density(rho, plan.domain);
    detail::check_alpha(alpha, rho.dim());
    if (std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; })) return apply_ktm(plan, rho);
    return apply_ktm(plan, spectral_derivative(rho, alpha));
}

inline ScalarField solve_derivative(const ConvolutionPlan& plan, const ScalarField& rho, const MultiIndex& alpha) {
    detail::check_density(rho, plan.domain);
    detail::check_alpha(alpha, rho.dim());
    if (std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; })) return apply_tensor(plan, rho);
    return apply_tensor(plan, spectral_derivative(rho, alpha));
}

/// Dominant-array memory model in bytes:
///   plain / tensor-precompute: one real array on the padded grid, 8 prod S_j N_j;
///   tensor-execute: the complex 2N spectrum plus one real 2N scratch, 24 prod 2 N_j.
inline std::uint64_t estimate_memory(const DomainSpec& domain, const PaddingPlan& padding, MemoryMode mode) {
    std::uint64_t n = 1;
    if (mode == MemoryMode::TensorExecute) {
        for (std::size_t j = 0; j < domain.dim(); ++j) n *= 2 * domain.count(j);
        return 24 * n;
    }
    for (auto p : padding.padded_count) n *= p;
    return 8 * n;
}

}  // namespace ktm
