#pragma once

// Error norms and convergence-order fits.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ktm/error.hpp"
#include "ktm/spectral.hpp"

namespace ktm {

struct ErrorReport {
    double rel_max_error = 0.0;
    std::vector<std::size_t> N;
    std::vector<double> h;
    std::vector<double> S;
    std::string kernel;
    std::string fixture;
    double wall_time = 0.0;
    std::uint64_t est_memory = 0;
};

/// max |numeric - exact| / max |exact|.
inline double relative_max_error(const ScalarField& numeric, const ScalarField& exact) {
    if (!(numeric.mesh == exact.mesh)) throw InvalidArgument("relative_max_error: fields live on different meshes");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        num = std::max(num, std::abs(numeric.values[i] - exact.values[i]));
        den = std::max(den, std::abs(exact.values[i]));
    }
    if (den == 0.0) throw InvalidArgument("relative_max_error: exact field is identically zero");
    return num / den;
}

inline constexpr double kErrorFloor = 1e-13;

/// Negated least-squares slope of log(error) against log(N), ignoring errors below the
/// round-off floor. Needs at least three usable points.
inline double fit_convergence_order(const std::vector<std::pair<double, double>>& pairs, double floor = kErrorFloor) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, e] : pairs) {
        if (!(n > 0.0) || !std::isfinite(e)) throw InvalidArgument("fit_convergence_order: invalid (N, error) pair");
        if (e > floor) pts.emplace_back(std::log(n), std::log(e));
    }
    if (pts.size() < 3) throw InvalidArgument("fit_convergence_order: fewer than three errors above the floor");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0.0) throw InvalidArgument("fit_convergence_order: N values must differ");
    return -sxy / sxx;
}

}  // namespace ktm
