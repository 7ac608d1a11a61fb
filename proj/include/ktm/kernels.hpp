#pragma once

// Convolution kernels, Fourier transforms of their truncations to the ball B_G, and the
// effective densities that map the dipolar potentials onto radial kernels.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ktm/error.hpp"
#include "ktm/grid.hpp"
#include "ktm/quadrature.hpp"
#include "ktm/spectral.hpp"
#include "ktm/specfun.hpp"

namespace ktm {

using Vec3 = std::array<double, 3>;

namespace kernel {

/// U(x) = -|x|/2.
struct Poisson1D {};
/// U(x) = -ln|x| / (2 pi).
struct Poisson2D {};
/// U(x) = 1 / (4 pi |x|).
struct Poisson3D {};
/// U(x) = 1 / (2 pi |x|).
struct Coulomb2D {};
/// Dipole-dipole interaction with dipole axes m and n (unit vectors).
struct DDI3D {
    Vec3 m{0, 0, 1};
    Vec3 n{0, 0, 1};
};
/// Quasi-2D dipolar interaction with transverse width eps and dipole axis n.
struct QuasiDDI2D {
    double eps = 1.0;
    Vec3 n{0, 0, 1};
};
/// U(x) = Y_4^0(theta) / |x|^5 (principal value).
struct Quadrupolar3D {};
/// Any radial kernel U(|x|) in dimension d.
struct CustomRadial {
    std::function<double(double)> profile;
    std::size_t dim = 3;
    std::string name = "custom";
};

}  // namespace kernel

using KernelSpec = std::variant<kernel::Poisson1D, kernel::Poisson2D, kernel::Poisson3D, kernel::Coulomb2D,
                                kernel::DDI3D, kernel::QuasiDDI2D, kernel::Quadrupolar3D, kernel::CustomRadial>;

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_vec(const Vec3& v) { return "(" + fmt17(v[0]) + "," + fmt17(v[1]) + "," + fmt17(v[2]) + ")"; }

inline void require_unit(const Vec3& v, const char* what) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(std::abs(norm - 1.0) <= 1e-12)) throw InvalidArgument(std::string(what) + " must be a unit vector");
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace detail

inline void validate(const KernelSpec& k) {
    std::visit(detail::overloaded{
                   [](const kernel::DDI3D& d) {
                       detail::require_unit(d.m, "DDI3D: m");
                       detail::require_unit(d.n, "DDI3D: n");
                   },
                   [](const kernel::QuasiDDI2D& q) {
                       if (!(q.eps > 0.0) || !std::isfinite(q.eps)) throw InvalidArgument("QuasiDDI2D: eps must be positive");
                       detail::require_unit(q.n, "QuasiDDI2D: n");
                   },
                   [](const kernel::CustomRadial& c) {
                       if (!c.profile) throw InvalidArgument("CustomRadial: missing profile");
                       if (c.dim < 1 || c.dim > 3) throw InvalidArgument("CustomRadial: dimension must be 1, 2 or 3");
                   },
                   [](const auto&) {},
               },
               k);
}

inline std::size_t kernel_dim(const KernelSpec& k) {
    return std::visit(detail::overloaded{
                          [](const kernel::Poisson1D&) -> std::size_t { return 1; },
                          [](const kernel::Poisson2D&) -> std::size_t { return 2; },
                          [](const kernel::Coulomb2D&) -> std::size_t { return 2; },
                          [](const kernel::QuasiDDI2D&) -> std::size_t { return 2; },
                          [](const kernel::CustomRadial& c) -> std::size_t { return c.dim; },
                          [](const auto&) -> std::size_t { return 3; },
                      },
                      k);
}

/// Canonical text form, used in reports and cache keys.
inline std::string kernel_name(const KernelSpec& k) {
    return std::visit(detail::overloaded{
                          [](const kernel::Poisson1D&) -> std::string { return "poisson1d"; },
                          [](const kernel::Poisson2D&) -> std::string { return "poisson2d"; },
                          [](const kernel::Poisson3D&) -> std::string { return "poisson3d"; },
                          [](const kernel::Coulomb2D&) -> std::string { return "coulomb2d"; },
                          [](const kernel::DDI3D& d) -> std::string {
                              return "ddi3d m=" + detail::fmt_vec(d.m) + " n=" + detail::fmt_vec(d.n);
                          },
                          [](const kernel::QuasiDDI2D& q) -> std::string {
                              return "quasi2d eps=" + detail::fmt17(q.eps) + " n=" + detail::fmt_vec(q.n);
                          },
                          [](const kernel::Quadrupolar3D&) -> std::string { return "quadrupolar3d"; },
                          [](const kernel::CustomRadial& c) -> std::string {
                              return "custom:" + c.name + " d=" + std::to_string(c.dim);
                          },
                      },
                      k);
}

/// The radial kernel whose truncated transform a solve actually uses: the dipolar kernels
/// convolve their effective density with the 3D Poisson kernel resp. the quasi-2D kernel.
inline bool is_dipolar(const KernelSpec& k) {
    return std::holds_alternative<kernel::DDI3D>(k) || std::holds_alternative<kernel::QuasiDDI2D>(k);
}

/// Quasi-2D dipolar radial kernel
///   U~(r) = (2 pi)^{-3/2} int_R e^{-s^2/2} / sqrt(r^2 + eps^2 s^2) ds
///         = (2 pi)^{-3/2} eps^{-1} e^{a} K_0(a),  a = r^2 / (4 eps^2).
inline double quasi2d_profile(double r, double eps) {
    const double a = r * r / (4.0 * eps * eps);
    return std::pow(2.0 * M_PI, -1.5) / eps * specfun::scaled_k0(a);
}

/// U(r) for radial kernels (dipolar kernels map to their convolution kernel).
inline double radial_profile(const KernelSpec& k, double r) {
    return std::visit(detail::overloaded{
                          [r](const kernel::Poisson1D&) { return -0.5 * r; },
                          [r](const kernel::Poisson2D&) { return -std::log(r) / (2.0 * M_PI); },
                          [r](const kernel::Poisson3D&) { return 1.0 / (4.0 * M_PI * r); },
                          [r](const kernel::DDI3D&) { return 1.0 / (4.0 * M_PI * r); },
                          [r](const kernel::Coulomb2D&) { return 1.0 / (2.0 * M_PI * r); },
                          [r](const kernel::QuasiDDI2D& q) { return quasi2d_profile(r, q.eps); },
                          [r](const kernel::CustomRadial& c) { return c.profile(r); },
                          [](const kernel::Quadrupolar3D&) -> double {
                              throw InvalidArgument("radial_profile: quadrupolar kernel is not radial");
                          },
                      },
                      k);
}

namespace detail {

inline double sinc_half_sq(double x) {
    // 2 sin^2(x/2) / x^2, = (1 - cos x) / x^2
    if (x < 1e-4) return 0.5 - x * x / 24.0 + x * x * x * x / 720.0;
    const double s = std::sin(0.5 * x) / x;
    return 2.0 * s * s;
}

inline double one_minus_j0_over_x2(double x) {
    if (x < 2.0) {
        // sum_{n>=1} (-1)^{n+1} (x^2/4)^n / (n!)^2 / x^2
        const double q = 0.25 * x * x;
        double term = 0.25;
        double sum = term;
        for (int n = 2; n < 30; ++n) {
            term *= -q / (static_cast<double>(n) * n);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return (1.0 - specfun::j0(x)) / (x * x);
}

inline double j1_over_x(double x) {
    if (x < 1e-4) return 0.5 - x * x / 16.0;
    return specfun::j1(x) / x;
}

inline double sin_over_x(double x) { return x < 1e-4 ? 1.0 - x * x / 6.0 + x * x * x * x / 120.0 : std::sin(x) / x; }

}  // namespace detail

/// int_0^G r^{-3} j_4(k r) dr, the radial factor of the truncated quadrupolar transform.
inline double quadrupolar_bracket(double G, double k) {
    const double x = G * k;
    if (x < 4.0) {
        // k^4 G^2 sum_n (-1)^n x^{2n} / (2^n n! (2n+2) (2n+9)!!)
        const double x2 = x * x;
        double c = 1.0 / 945.0;
        double sum = c / 2.0;
        for (int n = 1; n < 40; ++n) {
            c *= -x2 / (2.0 * n * (2.0 * n + 9.0));
            const double t = c / (2.0 * n + 2.0);
            sum += t;
            if (std::abs(t) < 1e-18 * std::abs(sum)) break;
        }
        return k * k * k * k * G * G * sum;
    }
    const double G2 = G * G;
    const double k2 = k * k;
    return k2 / 105.0 - (-15.0 + G2 * k2) * std::cos(x) / (G2 * G2 * G2 * k2 * k2) +
           3.0 * (-5.0 + 2.0 * G2 * k2) * std::sin(x) / (G2 * G2 * G2 * G * k2 * k2 * k);
}

/// Closed-form truncated transform of a radial kernel at |k| = k, if one is available.
inline bool uhat_closed_form(const KernelSpec& kern, double G, double k, double& out) {
    const double x = G * k;
    return std::visit(detail::overloaded{
                          [&](const kernel::Poisson1D&) {
                              out = G * G * (detail::sinc_half_sq(x) - detail::sin_over_x(x));
                              return true;
                          },
                          [&](const kernel::Poisson2D&) {
                              out = G * G * (detail::one_minus_j0_over_x2(x) - std::log(G) * detail::j1_over_x(x));
                              return true;
                          },
                          [&](const kernel::Poisson3D&) {
                              out = G * G * detail::sinc_half_sq(x);
                              return true;
                          },
                          [&](const kernel::DDI3D&) {
                              out = G * G * detail::sinc_half_sq(x);
                              return true;
                          },
                          [&](const kernel::Coulomb2D&) {
                              out = x == 0.0 ? G : specfun::integral_j0(x) / k;
                              return true;
                          },
                          [&](const auto&) { return false; },
                      },
                      kern);
}

/// Truncated transform of a radial kernel by adaptive quadrature of the reduced radial integral:
///   d=1: 2 int_0^G cos(kr) U(r) dr
///   d=2: 2 pi int_0^G J_0(kr) U(r) r dr
///   d=3: 4 pi int_0^G sin(kr)/(kr) U(r) r^2 dr
inline double uhat_radial_quadrature(const KernelSpec& kern, double G, double k, const quad::Options& opt = {}) {
    if (!(G > 0.0) || !std::isfinite(G)) throw InvalidArgument("uhat: G must be positive and finite");
    if (!(k >= 0.0) || !std::isfinite(k)) throw InvalidArgument("uhat: |k| must be finite and non-negative");
    const std::size_t d = kernel_dim(kern);
    const int panels = 1 + static_cast<int>(k * G / M_PI);
    quad::Result res;
    if (d == 1) {
        res = quad::integrate_panels([&](double r) { return 2.0 * std::cos(k * r) * radial_profile(kern, r); }, 0.0,
                                     G, panels, opt);
    } else if (d == 2) {
        res = quad::integrate_panels(
            [&](double r) { return 2.0 * M_PI * specfun::j0(k * r) * radial_profile(kern, r) * r; }, 0.0, G, panels,
            opt);
    } else {
        res = quad::integrate_panels(
            [&](double r) { return 4.0 * M_PI * detail::sin_over_x(k * r) * radial_profile(kern, r) * r * r; }, 0.0,
            G, panels, opt);
    }
    return res.value;
}

/// Quadrature oracle for the quadrupolar transform: 4 pi Y_4^0(theta_k) int_0^G r^{-3} j_4(kr) dr.
inline double uhat_quadrupolar_quadrature(double G, const Vec3& k, const quad::Options& opt = {}) {
    const double km = std::sqrt(detail::dot(k, k));
    if (km == 0.0) return 0.0;
    const int panels = 1 + static_cast<int>(km * G / M_PI);
    const auto res = quad::integrate_panels(
        [&](double r) { return specfun::sph_j4(km * r) / (r * r * r); }, 0.0, G, panels, opt);
    return 4.0 * M_PI * specfun::y40_of_cos(k[2] / km) * res.value;
}

/// Fourier transform of U restricted to B_G at the wavevector k (length = kernel dimension).
inline double uhat_truncated(const KernelSpec& kern, double G, const std::vector<double>& k) {
    validate(kern);
    if (!(G > 0.0) || !std::isfinite(G)) throw InvalidArgument("uhat: G must be positive and finite");
    if (k.size() != kernel_dim(kern)) throw InvalidArgument("uhat: wavevector length must match the kernel dimension");
    double k2 = 0.0;
    for (double c : k) {
        if (!std::isfinite(c)) throw InvalidArgument("uhat: non-finite wavevector component");
        k2 += c * c;
    }
    const double km = std::sqrt(k2);
    if (std::holds_alternative<kernel::Quadrupolar3D>(kern)) {
        if (km == 0.0) return 0.0;
        return 4.0 * M_PI * specfun::y40_of_cos(k[2] / km) * quadrupolar_bracket(G, km);
    }
    double v = 0.0;
    if (uhat_closed_form(kern, G, km, v)) return v;
    return uhat_radial_quadrature(kern, G, km);
}

/// Radial kernels only.
inline double uhat_truncated(const KernelSpec& kern, double G, double k) {
    if (std::holds_alternative<kernel::Quadrupolar3D>(kern))
        throw InvalidArgument("uhat: the quadrupolar kernel needs a wavevector");
    validate(kern);
    if (!(G > 0.0) || !std::isfinite(G)) throw InvalidArgument("uhat: G must be positive and finite");
    if (!(k >= 0.0) || !std::isfinite(k)) throw InvalidArgument("uhat: |k| must be finite and non-negative");
    double v = 0.0;
    if (uhat_closed_form(kern, G, k, v)) return v;
    return uhat_radial_quadrature(kern, G, k);
}

/// Samples of the truncated transform on the whole padded Fourier lattice, stored in
/// engine-native order (row-major, last axis fastest).
struct TruncatedKernelFT {
    std::vector<double> values;
    double G = 0.0;
    KernelSpec kernel;
    std::vector<std::size_t> count;

    std::size_t size() const noexcept { return values.size(); }
};

/// Checks that int_{B_G} |U| is finite for a user-supplied kernel.
inline void check_custom_integrable(const kernel::CustomRadial& c, double G) {
    double area = 2.0;
    if (c.dim == 2) area = 2.0 * M_PI;
    if (c.dim == 3) area = 4.0 * M_PI;
    quad::Options opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 0.0;
    double mass = 0.0;
    try {
        mass = quad::integrate(
                   [&](double r) { return area * std::abs(c.profile(r)) * std::pow(r, static_cast<double>(c.dim) - 1.0); },
                   0.0, G, opt)
                   .value;
    } catch (const Error&) {
        throw InvalidArgument("CustomRadial: kernel is not integrable on the truncation ball");
    }
    if (!std::isfinite(mass)) throw InvalidArgument("CustomRadial: kernel is not integrable on the truncation ball");
}

inline TruncatedKernelFT uhat_grid(const KernelSpec& kern, const PaddingPlan& plan) {
    validate(kern);
    const std::size_t d = plan.dim();
    if (kernel_dim(kern) != d) throw InvalidArgument("uhat_grid: kernel and padding dimensions differ");
    if (const auto* c = std::get_if<kernel::CustomRadial>(&kern)) check_custom_integrable(*c, plan.radius);
    const FourierGrid grid = plan.fourier_grid();
    const double G = plan.radius;
    TruncatedKernelFT out{std::vector<double>(grid.size()), G, kern, grid.count};

    const auto n3 = detail::as3(grid.count);
    const std::size_t lead = 3 - d;
    std::array<std::vector<double>, 3> k;
    for (std::size_t s = 0; s < 3; ++s) {
        k[s].assign(n3[s], 0.0);
        if (s >= lead)
            for (std::size_t i = 0; i < n3[s]; ++i) k[s][i] = grid.wavenumber(s - lead, grid.mode_of_index(s - lead, i));
    }

    const bool quadrupolar = std::holds_alternative<kernel::Quadrupolar3D>(kern);
    double probe = 0.0;
    const bool closed = quadrupolar || uhat_closed_form(kern, G, 1.0, probe);
    std::unordered_map<double, double> memo;  // quadrature kernels: cache by |k|^2

    std::size_t idx = 0;
    for (std::size_t a = 0; a < n3[0]; ++a)
        for (std::size_t b = 0; b < n3[1]; ++b)
            for (std::size_t c = 0; c < n3[2]; ++c, ++idx) {
                const double k2 = k[0][a] * k[0][a] + k[1][b] * k[1][b] + k[2][c] * k[2][c];
                const double km = std::sqrt(k2);
                double v = 0.0;
                if (quadrupolar) {
                    v = km == 0.0 ? 0.0
                                  : 4.0 * M_PI * specfun::y40_of_cos(k[2][c] / km) * quadrupolar_bracket(G, km);
                } else if (closed) {
                    uhat_closed_form(kern, G, km, v);
                } else {
                    auto it = memo.find(k2);
                    if (it == memo.end()) it = memo.emplace(k2, uhat_radial_quadrature(kern, G, km)).first;
                    v = it->second;
                }
                out.values[idx] = v;
            }
    return out;
}

/// Local coefficient and derivative density of the 3D dipolar reformulation
///   Phi = scale * rho - 3 * (1/(4 pi |x|)) * field,  scale = -(m.n),  field = d_n d_m rho.
struct EffectiveDensity {
    double scale = 0.0;
    ScalarField field;
};

inline EffectiveDensity ddi_effective_density(const ScalarField& rho, const kernel::DDI3D& k, const PaddingPlan& plan) {
    if (rho.dim() != 3) throw InvalidArgument("ddi_effective_density: 3D field required");
    detail::require_unit(k.m, "DDI3D: m");
    detail::require_unit(k.n, "DDI3D: n");
    return {-detail::dot(k.m, k.n),
            directional_second_derivative(rho, plan, {k.n[0], k.n[1], k.n[2]}, {k.m[0], k.m[1], k.m[2]})};
}

/// rho~ = -(3/2) (d_{n_perp n_perp} - n_3^2 Laplacian) rho for the quasi-2D dipolar kernel.
inline ScalarField quasi2d_effective_density(const ScalarField& rho, const kernel::QuasiDDI2D& k,
                                             const PaddingPlan& plan) {
    if (rho.dim() != 2) throw InvalidArgument("quasi2d_effective_density: 2D field required");
    detail::require_unit(k.n, "QuasiDDI2D: n");
    const double n1 = k.n[0], n2 = k.n[1], n3 = k.n[2];
    return detail::padded_spectral_apply(rho, plan, [&](std::size_t, const auto& kv, const auto& nyq) {
        const double cross = (nyq[0] || nyq[1]) ? 0.0 : 2.0 * n1 * n2 * kv[0] * kv[1];
        const double perp = n1 * n1 * kv[0] * kv[0] + n2 * n2 * kv[1] * kv[1] + cross;
        const double lap = kv[0] * kv[0] + kv[1] * kv[1];
        // symbol of d_{pp} is -(p.k)^2, of the Laplacian -|k|^2
        return Complex{1.5 * (perp - n3 * n3 * lap), 0.0};
    });
}

}  // namespace ktm
