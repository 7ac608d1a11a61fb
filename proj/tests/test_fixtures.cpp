#include <cmath>

#include <gtest/gtest.h>

#include "ktm/fixtures.hpp"
#include "oracle_values.hpp"

using namespace ktm;
using namespace ktm::fixtures;

namespace {

const double kSigma = std::sqrt(1.2);

Vec3 unit(Vec3 v) { return normalized(v); }

}  // namespace

TEST(Fixtures, Poisson3DAnisotropicAgainstOracle) {
    for (const auto& c : oracle::kPoisson3DAniso) {
        const Point x{c.args[0], c.args[1], c.args[2]};
        EXPECT_NEAR(exact_poisson3d_gaussian(x, c.args[3], c.args[4]), c.value, 1e-13 * std::abs(c.value));
    }
}

TEST(Fixtures, Coulomb2DAnisotropicAgainstOracle) {
    for (const auto& c : oracle::kCoulomb2DAniso) {
        const Point x{c.args[0], c.args[1], 0.0};
        EXPECT_NEAR(exact_coulomb2d_gaussian(x, c.args[2], c.args[3]), c.value, 1e-13 * std::abs(c.value));
    }
    EXPECT_NEAR(exact_coulomb2d_gaussian({0, 0, 0}, 2.0, 1.0), std::sqrt(M_PI), 1e-15);
}

TEST(Fixtures, Coulomb2DDerivativeMatchesFiniteDifference) {
    const Point x{0.9, -0.4, 0.0};
    const double h = 1e-5;
    const double fd = (exact_coulomb2d_gaussian({x[0] + h, x[1], 0}, kSigma) -
                       exact_coulomb2d_gaussian({x[0] - h, x[1], 0}, kSigma)) / (2 * h);
    EXPECT_NEAR(exact_coulomb2d_gaussian_dx(x, kSigma), fd, 1e-9);
}

TEST(Fixtures, DipolarAgainstOracle) {
    const Vec3 m = unit({0.3118, 0.9378, -0.15214}), n = unit({0.82778, 0.41505, -0.37751});
    for (const auto& c : oracle::kDDI3D) {
        const Point x{c.args[0], c.args[1], c.args[2]};
        EXPECT_NEAR(exact_ddi3d(x, kSigma, m, n), c.value, 1e-13 * std::abs(c.value) + 1e-16);
    }
}

TEST(Fixtures, QuadrupolarAgainstOracle) {
    for (const auto& c : oracle::kQuadrupolar) {
        const Point x{c.args[0], c.args[1], c.args[2]};
        EXPECT_NEAR(exact_quadrupolar(x, 1.5), c.value, 1e-13 * std::abs(c.value)) << "r=" << std::hypot(x[0], x[1], x[2]);
    }
    // finite at the origin
    EXPECT_TRUE(std::isfinite(exact_quadrupolar({0, 0, 0}, 1.5)));
}

TEST(Fixtures, Poisson1D2DAgainstOracle) {
    for (const auto& c : oracle::kPoisson2DGauss)
        EXPECT_NEAR(exact_poisson2d_gaussian(c.args[0], kSigma), c.value, 1e-14 * std::abs(c.value)) << c.args[0];
    for (const auto& c : oracle::kPoisson1DGauss)
        EXPECT_NEAR(exact_poisson1d_gaussian(c.args[0], kSigma), c.value, 1e-14 * std::abs(c.value)) << c.args[0];
    // r -> 0 limit: (sigma^2 / 4)(gamma_E - 2 ln sigma)
    EXPECT_NEAR(exact_poisson2d_gaussian(0.0, kSigma), 0.3 * (specfun::kEulerGamma - std::log(1.2)), 1e-15);
}

TEST(Fixtures, NonsmoothPotentialsAgainstOracle) {
    auto check = [](const auto& table, const KernelSpec& k) {
        for (const auto& c : table) {
            const Point x{c.args[0], 0.0, 0.0};
            EXPECT_NEAR(exact_nonsmooth_potential(x, static_cast<int>(c.args[1]), k), c.value, 1e-13 * std::abs(c.value))
                << kernel_name(k) << " r=" << c.args[0] << " m=" << c.args[1];
        }
    };
    check(oracle::kNonsmoothPoisson3D, kernel::Poisson3D{});
    check(oracle::kNonsmoothPoisson2D, kernel::Poisson2D{});
    check(oracle::kNonsmoothPoisson1D, kernel::Poisson1D{});
    check(oracle::kNonsmoothCoulomb2D, kernel::Coulomb2D{});
    for (const auto& c : oracle::kNonsmoothCoulomb2DDr)
        EXPECT_NEAR(coulomb2d_nonsmooth_dr(c.args[0], static_cast<int>(c.args[1])), c.value, 1e-11 * std::abs(c.value));
}

TEST(Fixtures, CoulombNonsmoothClosedFormMatchesRingQuadrature) {
    for (int m : {2, 3})
        for (double r : {0.1, 0.5, 0.99, 1.0, 1.01, 2.5})
            EXPECT_NEAR(exact_coulomb2d_nonsmooth(r, m), coulomb2d_nonsmooth_quadrature(r, m), 1e-13) << r;
}

TEST(Fixtures, NonsmoothDensityIsCompact) {
    EXPECT_EQ(nonsmooth_density({1.2, 0, 0}, 3, {0, 0, 0}, 2), 0.0);
    EXPECT_DOUBLE_EQ(nonsmooth_density({0.5, 0, 0}, 2, {0, 0, 0}, 1), 0.5625);
    EXPECT_DOUBLE_EQ(nonsmooth_density({0.61, 0.22, 0}, 2, {0.11, 0.22, 0}, 2), 0.5625);
    EXPECT_DOUBLE_EQ(nonsmooth_density_dx({0.5, 0, 0}, 2, {0, 0, 0}, 1), -2 * 2 * 0.5 * 0.75);
}

TEST(Fixtures, ShiftedPotentialIsTranslated) {
    auto p = default_params("nonsmooth_coulomb2d");
    p.m = 3;
    p.delta = {0.11, 0.22, 0.0};
    const auto f = make_fixture("nonsmooth_coulomb2d", p);
    EXPECT_NEAR(f.potential({0.61, 0.22, 0}), exact_coulomb2d_nonsmooth(0.5, 3), 1e-15);
}

TEST(Fixtures, RegistryBuildsEveryCase) {
    for (const auto& name : fixture_names()) {
        const auto f = make_fixture(name);
        EXPECT_EQ(f.dim, kernel_dim(f.kernel)) << name;
        EXPECT_TRUE(f.density && f.potential && f.exact_field) << name;
    }
    EXPECT_THROW(make_fixture("nope"), InvalidArgument);
    auto p = default_params("nonsmooth_poisson3d");
    p.m = 0;
    EXPECT_THROW(make_fixture("nonsmooth_poisson3d", p), InvalidArgument);
}

TEST(Fixtures, AnisotropicPoisson2DSourceIsMinusLaplacian) {
    auto p = default_params("poisson2d_aniso");
    p.gamma = 0.5;
    const auto f = make_fixture("poisson2d_aniso", p);
    const Point x{0.4, -0.3, 0.0};
    const double h = 1e-4;
    const double lap = (f.potential({x[0] + h, x[1], 0}) + f.potential({x[0] - h, x[1], 0}) +
                        f.potential({x[0], x[1] + h, 0}) + f.potential({x[0], x[1] - h, 0}) - 4 * f.potential(x)) /
                       (h * h);
    EXPECT_NEAR(f.density(x), -lap, 1e-6);
}
