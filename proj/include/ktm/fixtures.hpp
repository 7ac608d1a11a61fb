#pragma once

// Analytic densities and their exact potentials: Gaussian sources for every kernel and the
// compactly supported (1 - |x|^2)^m family with finite smoothness.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ktm/error.hpp"
#include "ktm/kernels.hpp"
#include "ktm/quadrature.hpp"
#include "ktm/spectral.hpp"
#include "ktm/specfun.hpp"

namespace ktm::fixtures {

using PointFn = std::function<double(const Point&)>;
using FieldFn = std::function<ScalarField(const Mesh&)>;

struct FixtureParams {
    double sigma = 1.0;
    double gamma = 1.0;  // anisotropy of the density along the last axis
    Vec3 shift{0, 0, 0};  // second copy of the density at x0 (zero: single source)
    int m = 2;            // smoothness index of the compact density
    Vec3 delta{0, 0, 0};  // centre of the compact density
    double eps = 1.0;
    Vec3 dipole_m{0, 0, 1};
    Vec3 dipole_n{0, 0, 1};
};

struct FixtureCase {
    std::string name;
    KernelSpec kernel;
    std::size_t dim = 3;
    FixtureParams params;
    PointFn density;
    PointFn potential;
    PointFn potential_dx;  // d/dx_1 of the potential, where available
    PointFn density_dx;    // d/dx_1 of the density, where available
    FieldFn exact_field;   // potential on a mesh (may cache expensive evaluations)
};

namespace detail {

inline double norm2(const Point& x, std::size_t d) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += x[j] * x[j];
    return s;
}

inline Point minus(const Point& x, const Vec3& c) { return {x[0] - c[0], x[1] - c[1], x[2] - c[2]}; }

inline bool is_zero(const Vec3& v) { return v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0; }

inline quad::Options tight() {
    quad::Options o;
    o.abs_tol = 0.0;
    o.rel_tol = 1e-14;
    return o;
}

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline FieldFn pointwise(PointFn f) {
    return [f = std::move(f)](const Mesh& mesh) { return sample(mesh, f); };
}

// erf(u)/u, f'(u)/u and f''(u) for f = erf(u)/u.
struct ErfOverU {
    double f, df_over_u, d2f;
};

inline ErfOverU erf_over_u(double u) {
    constexpr double two_over_sqrt_pi = 1.1283791670955125739;
    if (u < 1.0) {
        // f = (2/sqrt(pi)) sum_n (-1)^n u^{2n} / (n! (2n+1)); differentiate termwise
        const double u2 = u * u;
        double f = 1.0, df = 0.0, d2f = 0.0;
        double t = -1.0;  // (-1)^n u^{2n-2} / n!
        for (int n = 1; n < 40; ++n) {
            f += t * u2 / (2.0 * n + 1.0);
            df += t * 2.0 * n / (2.0 * n + 1.0);
            d2f += t * 2.0 * n * (2.0 * n - 1.0) / (2.0 * n + 1.0);
            t *= -u2 / (n + 1.0);
            if (std::abs(t) < 1e-20) break;
        }
        return {two_over_sqrt_pi * f, two_over_sqrt_pi * df, two_over_sqrt_pi * d2f};
    }
    const double e = std::erf(u);
    const double g = two_over_sqrt_pi * std::exp(-u * u);
    return {e / u, (g / u - e / (u * u)) / u, g * (-2.0 - 2.0 / (u * u)) + 2.0 * e / (u * u * u)};
}

}  // namespace detail

// --- Gaussian sources ---------------------------------------------------------------------

/// e^{-(x^2 + y^2 + z^2/gamma^2)/sigma^2} in d dimensions (gamma scales the last axis),
/// plus a second copy centred at `shift` when it is non-zero.
inline PointFn gaussian_density(double sigma, std::size_t d, double gamma = 1.0, Vec3 shift = {0, 0, 0}) {
    if (!(sigma > 0.0)) throw InvalidArgument("gaussian_density: sigma must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("gaussian_density: gamma must lie in (0, 1]");
    auto one = [sigma, d, gamma](const Point& x) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = (j + 1 == d && d > 1) ? x[j] / gamma : x[j];
            s += v * v;
        }
        return std::exp(-s / (sigma * sigma));
    };
    if (detail::is_zero(shift)) return one;
    return [one, shift](const Point& x) { return one(x) + one(detail::minus(x, shift)); };
}

/// 3D Poisson potential of the (possibly anisotropic) Gaussian. For gamma < 1:
///   (gamma sigma^2 / 4) int_0^inf e^{-rho^2/(sigma^2(t+1))} e^{-z^2/(sigma^2(t+gamma^2))} / ((t+1) sqrt(t+gamma^2)) dt
/// evaluated with t = s^2 and the map s = u/(1-u).
inline double exact_poisson3d_gaussian(const Point& x, double sigma, double gamma3 = 1.0) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (gamma3 == 1.0) {
        const double u = std::sqrt(r2) / sigma;
        return 0.25 * sigma * sigma * std::sqrt(M_PI) * detail::erf_over_u(u).f;
    }
    const double rho2 = x[0] * x[0] + x[1] * x[1];
    const double z2 = x[2] * x[2];
    const double s2 = sigma * sigma;
    const double g2 = gamma3 * gamma3;
    auto f = [&](double s) {
        const double t = s * s;
        return 2.0 * s * std::exp(-rho2 / (s2 * (t + 1.0)) - z2 / (s2 * (t + g2))) / ((t + 1.0) * std::sqrt(t + g2));
    };
    return 0.25 * gamma3 * s2 * quad::integrate_to_infinity(f, 0.0, detail::tight()).value;
}

/// -(sigma^2/2) e^{-x^2/sigma^2} - (sqrt(pi) sigma / 2) x erf(x/sigma).
inline double exact_poisson1d_gaussian(double x, double sigma) {
    return -0.5 * sigma * sigma * std::exp(-x * x / (sigma * sigma)) -
           0.5 * std::sqrt(M_PI) * sigma * x * std::erf(x / sigma);
}

/// -(sigma^2/4) [E_1(r^2/sigma^2) + 2 ln r], with the logarithms cancelled analytically for r < sigma.
inline double exact_poisson2d_gaussian(double r, double sigma) {
    const double z = r * r / (sigma * sigma);
    if (z < 1.0) {
        // E_1(z) + 2 ln r = -gamma_E + 2 ln sigma + sum_{n>=1} (-1)^{n+1} z^n / (n n!)
        double term = 1.0, sum = 0.0;
        for (int n = 1; n < 40; ++n) {
            term *= -z / n;
            sum -= term / n;
            if (std::abs(term) < 1e-20) break;
        }
        return -0.25 * sigma * sigma * (-specfun::kEulerGamma + 2.0 * std::log(sigma) + sum);
    }
    return -0.25 * sigma * sigma * (specfun::e1(z) + 2.0 * std::log(r));
}

/// 2D Coulomb potential of the Gaussian with y-anisotropy gamma2.
inline double exact_coulomb2d_gaussian(const Point& x, double sigma, double gamma2 = 1.0) {
    const double s2 = sigma * sigma;
    if (gamma2 == 1.0) {
        const double a = (x[0] * x[0] + x[1] * x[1]) / (2.0 * s2);
        return 0.5 * std::sqrt(M_PI) * sigma * specfun::scaled_i(0, a);
    }
    const double g2 = gamma2 * gamma2;
    auto f = [&](double t) {
        const double t2 = t * t;
        return std::exp(-x[0] * x[0] / (s2 * (t2 + 1.0)) - x[1] * x[1] / (s2 * (t2 + g2))) /
               (std::sqrt(t2 + 1.0) * std::sqrt(t2 + g2));
    };
    return gamma2 * sigma / std::sqrt(M_PI) * quad::integrate_to_infinity(f, 0.0, detail::tight()).value;
}

/// d/dx of the isotropic 2D Coulomb Gaussian potential.
inline double exact_coulomb2d_gaussian_dx(const Point& x, double sigma) {
    const double s2 = sigma * sigma;
    const double a = (x[0] * x[0] + x[1] * x[1]) / (2.0 * s2);
    return x[0] / s2 * 0.5 * std::sqrt(M_PI) * sigma * (specfun::scaled_i(1, a) - specfun::scaled_i(0, a));
}

/// 3D dipolar potential of the Gaussian: -(m.n) rho - 3 d_n d_m phi, phi = sigma^3 sqrt(pi) erf(r/sigma) / (4r).
inline double exact_ddi3d(const Point& x, double sigma, const Vec3& m, const Vec3& n) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double u = r / sigma;
    const auto e = detail::erf_over_u(u);
    const double c = 0.25 * std::sqrt(M_PI);
    const double d2 = c * e.d2f;         // phi''(r)
    const double d1r = c * e.df_over_u;  // phi'(r) / r
    const double nm = m[0] * n[0] + m[1] * n[1] + m[2] * n[2];
    const double rho = std::exp(-u * u);
    double dnm = d1r * nm;
    if (r > 0.0) {
        const double nx = (n[0] * x[0] + n[1] * x[1] + n[2] * x[2]) / r;
        const double mx = (m[0] * x[0] + m[1] * x[1] + m[2] * x[2]) / r;
        dnm = d2 * nx * mx + d1r * (nm - nx * mx);
    }
    return -nm * rho - 3.0 * dnm;
}

/// Quasi-2D dipolar potential for n = (0,0,1), effective density (3/2) Lap(rho):
///   (12 pi / sigma^4) int_0^inf U~(t) t e^{-(r-t)^2/sigma^2} [(r^2+t^2-sigma^2) I0s(z) - 2 r t I1s(z)] dt
/// with z = 2 r t / sigma^2 and I_ks = e^{-z} I_k.
inline double exact_quasi2d_ddi(double r, double sigma, double eps) {
    const double s2 = sigma * sigma;
    auto f = [&](double t) {
        const double z = 2.0 * r * t / s2;
        const double g = std::exp(-(r - t) * (r - t) / s2);
        if (g == 0.0) return 0.0;
        return quasi2d_profile(t, eps) * t * g *
               ((r * r + t * t - s2) * specfun::scaled_i(0, z) - 2.0 * r * t * specfun::scaled_i(1, z));
    };
    const double hi = r + 12.0 * sigma;
    std::vector<double> bp{std::max(0.0, r - 2.0 * sigma), std::max(0.0, r - sigma), r, r + sigma, r + 2.0 * sigma};
    bp.push_back(std::min(eps, 0.5 * sigma));
    quad::Options o = detail::tight();
    o.abs_tol = 1e-17;
    return 12.0 * M_PI / (s2 * s2) * quad::integrate(f, 0.0, hi, bp, o).value;
}

/// Quadrupolar potential of the Gaussian, (2 pi / (105 sigma^2)) Y_4^0(theta) F(r/sigma) with
///   F(u) = (105 sqrt(pi)/2) erf(u)/u^5 - e^{-u^2} (8u^6 + 28u^4 + 70u^2 + 105) / u^4.
inline double exact_quadrupolar(const Point& x, double sigma) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r == 0.0) return 0.0;
    const double u = r / sigma;
    double F;
    if (u < 1.5) {
        // sum_n a_n u^{4+2n}, a_0 = 16/9, a_n / a_{n-1} = -(2n+7) / (n (2n+9))
        const double u2 = u * u;
        double a = 16.0 / 9.0, p = u2 * u2, sum = a * p;
        for (int n = 1; n < 60; ++n) {
            a *= -(2.0 * n + 7.0) / (n * (2.0 * n + 9.0));
            p *= u2;
            sum += a * p;
            if (std::abs(a * p) < 1e-18 * std::abs(sum)) break;
        }
        F = sum;
    } else {
        const double u2 = u * u;
        F = 52.5 * std::sqrt(M_PI) * std::erf(u) / (u2 * u2 * u) -
            std::exp(-u2) * (8.0 * u2 * u2 * u2 + 28.0 * u2 * u2 + 70.0 * u2 + 105.0) / (u2 * u2);
    }
    return 2.0 * M_PI / (105.0 * sigma * sigma) * specfun::y40_of_cos(x[2] / r) * F;
}

// --- Compactly supported densities ---------------------------------------------------------

/// (1 - |x - delta|^2)^m inside the unit ball around delta, zero outside.
inline double nonsmooth_density(const Point& x, int m, const Vec3& delta, std::size_t d) {
    const double r2 = detail::norm2(detail::minus(x, delta), d);
    return r2 < 1.0 ? std::pow(1.0 - r2, m) : 0.0;
}

inline double nonsmooth_density_dx(const Point& x, int m, const Vec3& delta, std::size_t d) {
    const Point y = detail::minus(x, delta);
    const double r2 = detail::norm2(y, d);
    return r2 < 1.0 ? -2.0 * m * y[0] * std::pow(1.0 - r2, m - 1) : 0.0;
}

/// int (1 - |x|^2)^m dx over the unit ball in d dimensions.
inline double nonsmooth_mass(int m, std::size_t d) {
    if (d == 2) return M_PI / (m + 1.0);
    double s = 0.0;
    for (int j = 0; j <= m; ++j) s += detail::binom(m, j) * ((j % 2) ? -1.0 : 1.0) / (2.0 * j + (d == 1 ? 1.0 : 3.0));
    return (d == 1 ? 2.0 : 4.0 * M_PI) * s;
}

/// Constants of the 1D interior branch c1 + c2 |x| + sum_j (-1)^j C(m, j-1) x^{2j} / ((2j-1) 2j).
struct Poisson1DConstants {
    double c1, c2;
};

inline Poisson1DConstants poisson1d_nonsmooth_constants(int m) {
    const double c1 = -1.0 / (2.0 * (m + 1.0));  // int -(1-x^2)^m |x| / 2 dx
    double s = 0.0;
    for (int j = 1; j <= m + 1; ++j) s += ((j % 2) ? -1.0 : 1.0) * detail::binom(m, j - 1) / ((2.0 * j - 1.0) * 2.0 * j);
    return {c1, -nonsmooth_mass(m, 1) / 2.0 - c1 - s};
}

/// Radial potential and radial derivative of (1 - r^2)^m for the 1D/2D/3D Poisson kernels.
struct RadialValue {
    double value, dr;
};

inline RadialValue poisson_nonsmooth_radial(double r, int m, std::size_t d) {
    if (m < 1 || m > 6) throw InvalidArgument("nonsmooth potential: m must lie in 1..6");
    const double M = nonsmooth_mass(m, d);
    if (d == 3) {
        if (r > 1.0) return {M / (4.0 * M_PI * r), -M / (4.0 * M_PI * r * r)};
        double c = M / (4.0 * M_PI), v = 0.0, dv = 0.0;
        for (int j = 1; j <= m + 1; ++j) {
            const double a = ((j % 2) ? -1.0 : 1.0) * detail::binom(m, j - 1) / (2.0 * j * (2.0 * j + 1.0));
            c -= a;
            v += a * std::pow(r, 2 * j);
            dv += a * 2.0 * j * std::pow(r, 2 * j - 1);
        }
        return {c + v, dv};
    }
    if (d == 2) {
        if (r > 1.0) return {-M / (2.0 * M_PI) * std::log(r), -M / (2.0 * M_PI * r)};
        double c = 0.0, v = 0.0, dv = 0.0;
        for (int j = 1; j <= m + 1; ++j) {
            const double a = ((j % 2) ? -1.0 : 1.0) * detail::binom(m, j - 1) / (4.0 * j * j);
            c -= a;
            v += a * std::pow(r, 2 * j);
            dv += a * 2.0 * j * std::pow(r, 2 * j - 1);
        }
        return {c + v, dv};
    }
    if (r > 1.0) return {-M * r / 2.0, -M / 2.0};
    const auto k = poisson1d_nonsmooth_constants(m);
    double v = k.c1 + k.c2 * r, dv = k.c2;
    for (int j = 1; j <= m + 1; ++j) {
        const double a = ((j % 2) ? -1.0 : 1.0) * detail::binom(m, j - 1) / ((2.0 * j - 1.0) * 2.0 * j);
        v += a * std::pow(r, 2 * j);
        dv += a * 2.0 * j * std::pow(r, 2 * j - 1);
    }
    return {v, dv};
}

namespace detail {

inline double p0(double r) { return 23 - 23 * r * r + 8 * std::pow(r, 4); }
inline double p1(double r) { return 15 - 34 * r * r + 27 * std::pow(r, 4) - 8 * std::pow(r, 6); }
inline double p2(double r) { return -4 * (2 - 3 * r * r + std::pow(r, 4)); }
inline double l0(double r) { return 8 * (-22 + 33 * r * r - 23 * std::pow(r, 4) + 6 * std::pow(r, 6)); }
inline double l1(double r) { return 71 - 142 * r * r + 95 * std::pow(r, 4) - 24 * std::pow(r, 6); }
inline double l2(double r) {
    return -105 + 298 * r * r - 353 * std::pow(r, 4) + 208 * std::pow(r, 6) - 48 * std::pow(r, 8);
}

// Azimuthal averages of the 2D Coulomb kernel against cos(k t), k = 0, 1, for rings of radii r, s:
//   G0 = (2 / (pi R)) K(q^2),  G1 = (2 q / (3 pi R)) R_D(0, 1 - q^2, 1),  R = max, q = min / max.
// Both diverge logarithmically at r = s; the clamp keeps quadrature nodes that round onto it finite.
inline double ring_g0(double r, double s) {
    const double R = std::max(r, s), q = std::min(r, s) / R;
    return 2.0 / (M_PI * R) * specfun::ellip_k(std::min(q * q, 1.0 - 1e-16));
}

inline double ring_g1(double r, double s) {
    const double R = std::max(r, s), q = std::min(r, s) / R;
    if (q == 0.0) return 0.0;
    return 2.0 * q / (3.0 * M_PI * R) * specfun::carlson_rd(0.0, std::max(1.0 - q * q, 1e-300), 1.0);
}

}  // namespace detail

/// 2D Coulomb potential of (1 - r^2)^m: closed forms for m = 2, 3 (elliptic parameter
/// convention, argument r^2 inside the support and 1/r^2 outside).
inline double exact_coulomb2d_nonsmooth(double r, int m) {
    if (m != 2 && m != 3) throw InvalidArgument("2D Coulomb nonsmooth closed form: m must be 2 or 3");
    if (r == 0.0) r = 1e-300;
    if (r == 1.0) {
        // the K coefficients vanish on the boundary of the support
        return m == 2 ? 16.0 / (225.0 * M_PI) * detail::p0(1.0) : -32.0 / (3675.0 * M_PI) * detail::l0(1.0);
    }
    if (m == 2) {
        if (r <= 1.0) {
            const double K = specfun::ellip_k(r * r), E = specfun::ellip_e(r * r);
            return 16.0 / (225.0 * M_PI) * (detail::p0(r) * E + detail::p2(r) * K);
        }
        const double K = specfun::ellip_k(1.0 / (r * r)), E = specfun::ellip_e(1.0 / (r * r));
        return 16.0 / (225.0 * M_PI * r) * (r * r * detail::p0(r) * E + detail::p1(r) * K);
    }
    if (r <= 1.0) {
        const double K = specfun::ellip_k(r * r), E = specfun::ellip_e(r * r);
        return -32.0 / (3675.0 * M_PI) * (detail::l0(r) * E + detail::l1(r) * K);
    }
    const double K = specfun::ellip_k(1.0 / (r * r)), E = specfun::ellip_e(1.0 / (r * r));
    return -32.0 / (3675.0 * M_PI * r) * (r * r * detail::l0(r) * E + detail::l2(r) * K);
}

/// Same potential for any m by radial quadrature over rings: int_0^1 (1-s^2)^m s G0(r, s) ds.
inline double coulomb2d_nonsmooth_quadrature(double r, int m) {
    auto f = [&](double s) { return std::pow(1.0 - s * s, m) * s * detail::ring_g0(r, s); };
    std::vector<double> bp;
    if (r > 0.0 && r < 1.0) bp.push_back(r);
    return quad::integrate(f, 0.0, 1.0, bp, detail::tight()).value;
}

/// Radial derivative of the 2D Coulomb potential of (1 - r^2)^m: int_0^1 rho'(s) s G1(r, s) ds.
inline double coulomb2d_nonsmooth_dr(double r, int m) {
    if (m < 1 || m > 6) throw InvalidArgument("nonsmooth potential: m must lie in 1..6");
    if (r == 0.0) return 0.0;
    auto f = [&](double s) { return -2.0 * m * s * std::pow(1.0 - s * s, m - 1) * s * detail::ring_g1(r, s); };
    std::vector<double> bp;
    if (r < 1.0) bp.push_back(r);
    quad::Options o = detail::tight();
    o.abs_tol = 1e-16;
    return quad::integrate(f, 0.0, 1.0, bp, o).value;
}

/// Potential of the shifted compact density for Poisson (d = 1, 2, 3) or 2D Coulomb kernels.
inline double exact_nonsmooth_potential(const Point& x, int m, const KernelSpec& kern, const Vec3& delta = {0, 0, 0}) {
    const std::size_t d = kernel_dim(kern);
    const Point y = detail::minus(x, delta);
    const double r = std::sqrt(detail::norm2(y, d));
    if (std::holds_alternative<kernel::Coulomb2D>(kern))
        return (m == 2 || m == 3) ? exact_coulomb2d_nonsmooth(r, m) : coulomb2d_nonsmooth_quadrature(r, m);
    if (std::holds_alternative<kernel::Poisson1D>(kern) || std::holds_alternative<kernel::Poisson2D>(kern) ||
        std::holds_alternative<kernel::Poisson3D>(kern))
        return poisson_nonsmooth_radial(r, m, d).value;
    throw InvalidArgument("nonsmooth potential: unsupported kernel");
}

inline double exact_nonsmooth_potential_dx(const Point& x, int m, const KernelSpec& kern, const Vec3& delta = {0, 0, 0}) {
    const std::size_t d = kernel_dim(kern);
    const Point y = detail::minus(x, delta);
    const double r = std::sqrt(detail::norm2(y, d));
    if (r == 0.0) return 0.0;
    double dr;
    if (std::holds_alternative<kernel::Coulomb2D>(kern)) {
        dr = coulomb2d_nonsmooth_dr(r, m);
    } else if (std::holds_alternative<kernel::Poisson1D>(kern) || std::holds_alternative<kernel::Poisson2D>(kern) ||
               std::holds_alternative<kernel::Poisson3D>(kern)) {
        dr = poisson_nonsmooth_radial(r, m, d).dr;
    } else {
        throw InvalidArgument("nonsmooth potential: unsupported kernel");
    }
    return dr * y[0] / r;
}

// --- Registry ------------------------------------------------------------------------------

namespace detail {

// Evaluates g(key) once per distinct key while sampling a mesh.
template <class Key, class KeyFn, class ValFn>
FieldFn cached_field(KeyFn key, ValFn val) {
    return [key, val](const Mesh& mesh) {
        std::map<Key, double> cache;
        return sample(mesh, [&](const Point& x) {
            const Key k = key(x);
            auto it = cache.find(k);
            if (it == cache.end()) it = cache.emplace(k, val(x)).first;
            return it->second;
        });
    };
}

}  // namespace detail

inline std::vector<std::string> fixture_names() {
    return {"poisson1d_gaussian", "poisson2d_gaussian", "poisson2d_aniso",   "poisson3d_gaussian",
            "coulomb2d_gaussian", "ddi3d_gaussian",     "quasi2d_gaussian",  "quadrupolar_gaussian",
            "nonsmooth_poisson1d", "nonsmooth_poisson2d", "nonsmooth_poisson3d", "nonsmooth_coulomb2d"};
}

/// Default parameters used by the reference runs of each fixture.
inline FixtureParams default_params(const std::string& name) {
    FixtureParams p;
    p.sigma = std::sqrt(1.2);
    if (name == "poisson2d_aniso") p.sigma = 1.2;
    if (name == "quasi2d_gaussian") {
        p.sigma = 2.0;
        p.eps = 1.0 / std::sqrt(32.0);
    }
    if (name == "quadrupolar_gaussian") p.sigma = 1.5;
    if (name == "ddi3d_gaussian") {
        p.dipole_n = {0.82778, 0.41505, -0.37751};
        p.dipole_m = {0.3118, 0.9378, -0.15214};
    }
    return p;
}

/// Unit vector along v (the printed orientations carry five digits).
inline Vec3 normalized(const Vec3& v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

inline FixtureCase make_fixture(const std::string& name, const FixtureParams& p) {
    FixtureCase f;
    f.name = name;
    f.params = p;
    const double s = p.sigma;
    if (!(s > 0.0)) throw InvalidArgument("fixture: sigma must be positive");

    if (name == "poisson1d_gaussian") {
        f.kernel = kernel::Poisson1D{};
        f.dim = 1;
        f.density = gaussian_density(s, 1);
        f.potential = [s](const Point& x) { return exact_poisson1d_gaussian(x[0], s); };
    } else if (name == "poisson2d_gaussian") {
        f.kernel = kernel::Poisson2D{};
        f.dim = 2;
        f.density = gaussian_density(s, 2);
        f.potential = [s](const Point& x) { return exact_poisson2d_gaussian(std::hypot(x[0], x[1]), s); };
    } else if (name == "poisson2d_aniso") {
        // Phi = e^{-x^2/sigma^2 - y^2/alpha^2}, rho = -Lap Phi, alpha = gamma sigma
        f.kernel = kernel::Poisson2D{};
        f.dim = 2;
        const double a = p.gamma * s;
        f.potential = [s, a](const Point& x) { return std::exp(-x[0] * x[0] / (s * s) - x[1] * x[1] / (a * a)); };
        f.density = [s, a](const Point& x) {
            const double phi = std::exp(-x[0] * x[0] / (s * s) - x[1] * x[1] / (a * a));
            return phi * (-4.0 * x[0] * x[0] / std::pow(s, 4) - 4.0 * x[1] * x[1] / std::pow(a, 4) + 2.0 / (a * a) +
                          2.0 / (s * s));
        };
    } else if (name == "poisson3d_gaussian") {
        f.kernel = kernel::Poisson3D{};
        f.dim = 3;
        const double g = p.gamma;
        const Vec3 x0 = p.shift;
        f.density = gaussian_density(s, 3, g, x0);
        auto one = [s, g](const Point& x) { return exact_poisson3d_gaussian(x, s, g); };
        f.potential = [one, x0](const Point& x) {
            return detail::is_zero(x0) ? one(x) : one(x) + one(detail::minus(x, x0));
        };
        if (g != 1.0) {
            // the single-source potential depends on (x^2 + y^2, z^2) only
            f.exact_field = [one, x0](const Mesh& mesh) {
                std::map<std::pair<double, double>, double> cache;
                auto cached = [&](const Point& x) {
                    const std::pair<double, double> key{x[0] * x[0] + x[1] * x[1], x[2] * x[2]};
                    auto it = cache.find(key);
                    if (it == cache.end()) it = cache.emplace(key, one(x)).first;
                    return it->second;
                };
                return sample(mesh, [&](const Point& x) {
                    return detail::is_zero(x0) ? cached(x) : cached(x) + cached(detail::minus(x, x0));
                });
            };
        }
    } else if (name == "coulomb2d_gaussian") {
        f.kernel = kernel::Coulomb2D{};
        f.dim = 2;
        const double g = p.gamma;
        f.density = gaussian_density(s, 2, g);
        f.potential = [s, g](const Point& x) { return exact_coulomb2d_gaussian(x, s, g); };
        if (g == 1.0) {
            f.potential_dx = [s](const Point& x) { return exact_coulomb2d_gaussian_dx(x, s); };
        } else {
            f.exact_field = detail::cached_field<std::pair<double, double>>(
                [](const Point& x) { return std::pair<double, double>{x[0] * x[0], x[1] * x[1]}; }, f.potential);
        }
    } else if (name == "ddi3d_gaussian") {
        const Vec3 m = normalized(p.dipole_m), n = normalized(p.dipole_n);
        f.kernel = kernel::DDI3D{m, n};
        f.dim = 3;
        f.density = gaussian_density(s, 3);
        f.potential = [s, m, n](const Point& x) { return exact_ddi3d(x, s, m, n); };
    } else if (name == "quasi2d_gaussian") {
        const double eps = p.eps;
        f.kernel = kernel::QuasiDDI2D{eps, {0, 0, 1}};
        f.dim = 2;
        f.density = gaussian_density(s, 2);
        f.potential = [s, eps](const Point& x) { return exact_quasi2d_ddi(std::hypot(x[0], x[1]), s, eps); };
        f.exact_field = detail::cached_field<double>([](const Point& x) { return x[0] * x[0] + x[1] * x[1]; },
                                                     f.potential);
    } else if (name == "quadrupolar_gaussian") {
        f.kernel = kernel::Quadrupolar3D{};
        f.dim = 3;
        f.density = gaussian_density(s, 3);
        f.potential = [s](const Point& x) { return exact_quadrupolar(x, s); };
    } else if (name.rfind("nonsmooth_", 0) == 0) {
        const std::string k = name.substr(10);
        if (k == "poisson1d") {
            f.kernel = kernel::Poisson1D{};
        } else if (k == "poisson2d") {
            f.kernel = kernel::Poisson2D{};
        } else if (k == "poisson3d") {
            f.kernel = kernel::Poisson3D{};
        } else if (k == "coulomb2d") {
            f.kernel = kernel::Coulomb2D{};
        } else {
            throw InvalidArgument("unknown fixture: " + name);
        }
        f.dim = kernel_dim(f.kernel);
        if (p.m < 1 || p.m > 6) throw InvalidArgument("fixture: m must lie in 1..6");
        const int m = p.m;
        const Vec3 dl = p.delta;
        const std::size_t d = f.dim;
        const KernelSpec kern = f.kernel;
        f.density = [m, dl, d](const Point& x) { return nonsmooth_density(x, m, dl, d); };
        f.density_dx = [m, dl, d](const Point& x) { return nonsmooth_density_dx(x, m, dl, d); };
        f.potential = [m, dl, kern](const Point& x) { return exact_nonsmooth_potential(x, m, kern, dl); };
        f.potential_dx = [m, dl, kern](const Point& x) { return exact_nonsmooth_potential_dx(x, m, kern, dl); };
        if (std::holds_alternative<kernel::Coulomb2D>(kern)) {
            // radial about delta; cache the ring quadratures by squared radius and the x-offset sign
            f.exact_field = detail::cached_field<double>(
                [dl](const Point& x) { return (x[0] - dl[0]) * (x[0] - dl[0]) + (x[1] - dl[1]) * (x[1] - dl[1]); },
                f.potential);
        }
    } else {
        throw InvalidArgument("unknown fixture: " + name);
    }
    if (!f.exact_field) f.exact_field = detail::pointwise(f.potential);
    return f;
}

inline FixtureCase make_fixture(const std::string& name) { return make_fixture(name, default_params(name)); }

/// Exact x-derivative of the potential on a mesh (fixtures that provide one).
inline ScalarField exact_dx_field(const FixtureCase& f, const Mesh& mesh) {
    if (!f.potential_dx) throw InvalidArgument("fixture " + f.name + " has no exact x-derivative");
    if (std::holds_alternative<kernel::Coulomb2D>(f.kernel) && f.name.rfind("nonsmooth_", 0) == 0) {
        // d/dx = (dPhi/dr) (x - delta_x) / r: cache dPhi/dr by radius
        const Vec3 dl = f.params.delta;
        const int m = f.params.m;
        std::map<double, double> cache;
        return sample(mesh, [&](const Point& x) {
            const double dx = x[0] - dl[0], dy = x[1] - dl[1];
            const double r2 = dx * dx + dy * dy;
            if (r2 == 0.0) return 0.0;
            auto it = cache.find(r2);
            if (it == cache.end()) it = cache.emplace(r2, coulomb2d_nonsmooth_dr(std::sqrt(r2), m)).first;
            return it->second * dx / std::sqrt(r2);
        });
    }
    return sample(mesh, f.potential_dx);
}

}  // namespace ktm::fixtures
