#pragma once

// Special functions used by the analytic kernels and the exact reference potentials.
//
// Elliptic integrals use the parameter convention m = k^2 throughout:
//   ellip_k(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/ellint_rf.hpp>
#include <boost/math/special_functions/ellint_rd.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "ktm/error.hpp"

namespace ktm::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

namespace detail {

inline void require(bool ok, const char* fn, const std::string& msg) {
    if (!ok) throw DomainError(std::string(fn) + ": " + msg);
}

inline void require_finite(double x, const char* fn) { require(std::isfinite(x), fn, "argument must be finite"); }

}  // namespace detail

inline double erf(double x) {
    detail::require_finite(x, "erf");
    return boost::math::erf(x);
}

/// Exponential integral E_1(x) = int_x^inf e^{-t}/t dt, x > 0.
inline double e1(double x) {
    detail::require(x > 0.0 && std::isfinite(x), "e1", "argument must be positive and finite");
    return boost::math::expint(1, x);
}

inline double j0(double x) {
    detail::require_finite(x, "j0");
    return boost::math::cyl_bessel_j(0, x);
}

inline double j1(double x) {
    detail::require_finite(x, "j1");
    return boost::math::cyl_bessel_j(1, x);
}

inline double i0(double x) {
    detail::require_finite(x, "i0");
    return boost::math::cyl_bessel_i(0, x);
}

inline double i1(double x) {
    detail::require_finite(x, "i1");
    return boost::math::cyl_bessel_i(1, x);
}

/// Spherical Bessel function j_4.
inline double sph_j4(double x) {
    detail::require_finite(x, "sph_j4");
    if (x < 0.0) return sph_j4(-x);  // j_4 is even
    if (x < 0.5) {
        // x^4 sum_n (-x^2/2)^n / (n! (2n+9)!!)
        const double x2 = x * x;
        double term = 1.0 / 945.0;
        double sum = term;
        for (int n = 1; n < 12; ++n) {
            term *= -x2 / (2.0 * n * (2.0 * n + 9.0));
            sum += term;
        }
        return x2 * x2 * sum;
    }
    return boost::math::sph_bessel(4, x);
}

/// Complete elliptic integral of the first kind, parameter m in [0, 1).
inline double ellip_k(double m) {
    detail::require(m >= 0.0 && m < 1.0, "ellip_k", "parameter must lie in [0, 1)");
    // R_F form keeps 1 - m exact near the logarithmic singularity
    return boost::math::ellint_rf(0.0, 1.0 - m, 1.0);
}

/// Complete elliptic integral of the second kind, parameter m in [0, 1].
inline double ellip_e(double m) {
    detail::require(m >= 0.0 && m <= 1.0, "ellip_e", "parameter must lie in [0, 1]");
    if (m == 1.0) return 1.0;
    const double y = 1.0 - m;
    return boost::math::ellint_rf(0.0, y, 1.0) - m / 3.0 * boost::math::ellint_rd(0.0, y, 1.0);
}

/// Carlson's symmetric integral R_D(x, y, z).
inline double carlson_rd(double x, double y, double z) {
    detail::require(x >= 0.0 && y >= 0.0 && z > 0.0 && x + y > 0.0, "carlson_rd", "invalid arguments");
    return boost::math::ellint_rd(x, y, z);
}

/// Y_4^0 evaluated from c = cos(theta).
inline double y40_of_cos(double c) {
    const double c2 = c * c;
    return 3.0 / (16.0 * std::sqrt(M_PI)) * (3.0 - 30.0 * c2 + 35.0 * c2 * c2);
}

/// Normalised spherical harmonic Y_4^0 as a function of the polar angle.
inline double y40(double theta) {
    detail::require_finite(theta, "y40");
    return y40_of_cos(std::cos(theta));
}

namespace detail {

// e^{x} K_nu(x) and e^{-x} I_nu(x) for large x via the Hankel asymptotic series.
inline double scaled_bessel_asymptotic(int nu, double x, bool modified_i) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        const double signed_term = modified_i ? ((k % 2) ? -term : term) : term;
        sum += signed_term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return modified_i ? sum / std::sqrt(2.0 * M_PI * x) : sum * std::sqrt(M_PI / (2.0 * x));
}

}  // namespace detail

/// e^{x} K_0(x) for x > 0, finite for arbitrarily large x.
inline double scaled_k0(double x) {
    detail::require(x > 0.0 && std::isfinite(x), "scaled_k0", "argument must be positive and finite");
    if (x < 60.0) return std::exp(x) * boost::math::cyl_bessel_k(0, x);
    return detail::scaled_bessel_asymptotic(0, x, false);
}

/// e^{-|x|} I_nu(x) for nu in {0, 1}.
inline double scaled_i(int nu, double x) {
    detail::require(nu == 0 || nu == 1, "scaled_i", "order must be 0 or 1");
    detail::require_finite(x, "scaled_i");
    const double ax = std::abs(x);
    double v = ax < 60.0 ? std::exp(-ax) * boost::math::cyl_bessel_i(nu, ax)
                         : detail::scaled_bessel_asymptotic(nu, ax, true);
    return (nu == 1 && x < 0.0) ? -v : v;
}

/// int_0^x J_0(t) dt, evaluated as 2 sum_k J_{2k+1}(x) with Miller's backward recurrence.
inline double integral_j0(double x) {
    detail::require_finite(x, "integral_j0");
    if (x < 0.0) return -integral_j0(-x);
    if (x == 0.0) return 0.0;
    if (x < 0.25) {
        // sum_n (-1)^n x^{2n+1} / ((n!)^2 4^n (2n+1))
        const double x2 = x * x;
        double term = x;
        double sum = x;
        for (int n = 1; n < 10; ++n) {
            term *= -x2 / (4.0 * n * n);
            sum += term / (2.0 * n + 1.0);
        }
        return sum;
    }
    auto start = static_cast<long>(x + 10.0 * std::cbrt(x) + 40.0);
    if (start % 2) ++start;
    double next = 0.0;  // J_{n+1}
    double cur = 1e-300;  // J_n, unnormalised
    double norm = 0.0;    // J_0 + 2 sum J_{2k}
    double odd_sum = 0.0; // sum J_{2k+1}
    for (long n = start; n > 0; --n) {
        const double prev = 2.0 * static_cast<double>(n) / x * cur - next;  // J_{n-1}
        next = cur;
        cur = prev;
        const long m = n - 1;
        if (m % 2 == 0) {
            norm += (m == 0 ? 1.0 : 2.0) * cur;
        } else {
            odd_sum += cur;
        }
        if (std::abs(cur) > 1e250) {
            next *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
            odd_sum *= 1e-250;
        }
    }
    return 2.0 * odd_sum / norm;
}

}  // namespace ktm::specfun
