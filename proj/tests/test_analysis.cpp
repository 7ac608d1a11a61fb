#include <cmath>

#include <gtest/gtest.h>

#include "ktm/analysis.hpp"

using namespace ktm;

TEST(Analysis, RelativeMaxError) {
    const Mesh m{{1.0}, {4}};
    const ScalarField exact(m, {1.0, -4.0, 2.0, 0.0});
    const ScalarField num(m, {1.0, -3.0, 2.5, 0.1});
    EXPECT_DOUBLE_EQ(relative_max_error(num, exact), 0.25);
    EXPECT_THROW(relative_max_error(num, ScalarField(m)), InvalidArgument);
    EXPECT_THROW(relative_max_error(num, ScalarField(Mesh{{2.0}, {4}})), InvalidArgument);
}

TEST(Analysis, FitRecoversPowerLaw) {
    std::vector<std::pair<double, double>> pts;
    for (double n : {8.0, 16.0, 32.0, 64.0}) pts.emplace_back(n, 3.7 * std::pow(n, -4.0));
    EXPECT_NEAR(fit_convergence_order(pts), 4.0, 1e-6);
}

TEST(Analysis, FitIsScaleInvariant) {
    std::vector<std::pair<double, double>> a, b;
    const double e[] = {3e-2, 4e-3, 7e-4, 5e-5};
    const double n[] = {16, 32, 64, 128};
    for (int i = 0; i < 4; ++i) {
        a.emplace_back(n[i], e[i]);
        b.emplace_back(n[i], 1234.5 * e[i]);
    }
    EXPECT_NEAR(fit_convergence_order(a), fit_convergence_order(b), 1e-10);
}

TEST(Analysis, FitDropsPointsBelowFloor) {
    std::vector<std::pair<double, double>> pts{{8, 1e-2}, {16, 1e-4}, {32, 1e-6}, {64, 1e-15}, {128, 2e-16}};
    EXPECT_NEAR(fit_convergence_order(pts), std::log(100.0) / std::log(2.0), 1e-12);
    pts = {{8, 1e-14}, {16, 1e-15}, {32, 1e-2}, {64, 1e-16}};
    EXPECT_THROW(fit_convergence_order(pts), InvalidArgument);
}
