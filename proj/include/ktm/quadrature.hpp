#pragma once

// Globally adaptive Gauss-Kronrod (G10/K21) quadrature.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "ktm/error.hpp"

namespace ktm::quad {

struct Options {
    double abs_tol = 1e-15;
    double rel_tol = 1e-14;
    int max_intervals = 8000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    /// True when the tolerance was not met because every remaining interval sits at
    /// its round-off floor (typical for strongly cancelling oscillatory integrands).
    bool roundoff_limited = false;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977449314, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    bool at_floor;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod21(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = h * kXgk[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        resk += kWgk[j] * (f1[j] + f2[j]);
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double floor = 50.0 * eps * resabs;
    bool at_floor = false;
    if (err <= floor) {
        err = floor;
        at_floor = true;
    }
    return Segment{a, b, resk * h, err, at_floor};
}

}  // namespace detail

/// Integrates f over [a, b] split at the given interior breakpoints. Throws
/// QuadratureError if the interval budget is exhausted before reaching tolerance.
template <class F>
Result integrate(F&& f, double a, double b, const std::vector<double>& breakpoints, const Options& opt = {}) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("integrate: finite limits required");
    Result out;
    if (a == b) return out;
    const double sign = b < a ? -1.0 : 1.0;
    if (b < a) std::swap(a, b);

    std::vector<double> pts{a};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    auto& fn = f;
    std::priority_queue<detail::Segment> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] <= pts[i]) continue;
        auto s = detail::kronrod21(fn, pts[i], pts[i + 1]);
        out.evaluations += 21;
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }

    auto converged = [&] { return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    int intervals = static_cast<int>(heap.size());
    while (!converged()) {
        const detail::Segment worst = heap.top();
        if (worst.at_floor) {
            out.roundoff_limited = true;
            break;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            out.roundoff_limited = true;
            break;
        }
        if (intervals >= opt.max_intervals) {
            throw QuadratureError("integrate: subdivision limit reached", total_err);
        }
        heap.pop();
        auto left = detail::kronrod21(fn, worst.a, mid);
        auto right = detail::kronrod21(fn, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    total_err = 0.0;
    for (auto h = heap; !h.empty(); h.pop()) {
        total += h.top().value;
        total_err += h.top().error;
    }
    if (!std::isfinite(total)) throw QuadratureError("integrate: non-finite integrand values", total_err);
    out.value = sign * total;
    out.error = total_err;
    return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    return integrate(std::forward<F>(f), a, b, std::vector<double>{}, opt);
}

/// Integrates f over [a, b] after splitting it into `panels` equal pieces; used for
/// oscillatory integrands whose period is known.
template <class F>
Result integrate_panels(F&& f, double a, double b, int panels, const Options& opt = {}) {
    std::vector<double> bp;
    panels = std::max(panels, 1);
    for (int i = 1; i < panels; ++i) bp.push_back(a + (b - a) * i / panels);
    return integrate(std::forward<F>(f), a, b, bp, opt);
}

/// int_a^inf f(t) dt via the map t = a + u / (1 - u), u in [0, 1).
template <class F>
Result integrate_to_infinity(F&& f, double a, const Options& opt = {}) {
    auto g = [&f, a](double u) {
        const double one_minus = 1.0 - u;
        const double t = a + u / one_minus;
        const double v = f(t);
        return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
    };
    return integrate(g, 0.0, 1.0, std::vector<double>{0.5, 0.75, 0.875}, opt);
}

}  // namespace ktm::quad
