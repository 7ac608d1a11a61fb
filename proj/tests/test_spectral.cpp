#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ktm/spectral.hpp"

using namespace ktm;

namespace {

ScalarField random_field(const Mesh& m, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScalarField f(m);
    for (auto& v : f.values) v = u(rng);
    return f;
}

double max_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST(Spectral, SampleUsesMeshCoordinates) {
    const DomainSpec d(1.0, {1.0, 0.5}, {4, 2});
    const auto f = sample(d, [](const Point& x) { return 10 * x[0] + x[1]; });
    // x0 in {-1, -0.5, 0, 0.5}, x1 in {-0.5, 0}
    EXPECT_DOUBLE_EQ(f[0], -10.5);
    EXPECT_DOUBLE_EQ(f[1], -10.0);
    EXPECT_DOUBLE_EQ(f[7], 5.0);
}

TEST(Spectral, DftOfCosineIsTwoHalves) {
    const DomainSpec d(3.0, {1.0}, {16});
    const double k = 5.0 * M_PI / 3.0;
    const auto s = forward_dft(sample(d, [k](const Point& x) { return std::cos(k * x[0]); }));
    EXPECT_NEAR(s.at({5}).real(), 0.5, 1e-15);
    EXPECT_NEAR(s.at({-5}).real(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(s.at({4})), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.at({5}).imag()), 0.0, 1e-15);
}

TEST(Spectral, RoundTripAndHermitianSymmetry) {
    const DomainSpec d(2.0, {1.0, 0.5, 0.25}, {8, 6, 4});
    const auto f = random_field(d.mesh(), 3);
    const auto s = forward_dft(f);
    for (long a = -3; a < 4; ++a)
        for (long b = -2; b < 3; ++b)
            for (long c = -1; c < 2; ++c) EXPECT_NEAR(std::abs(s.at({a, b, c}) - std::conj(s.at({-a, -b, -c}))), 0.0, 1e-15);
    double imag = 1.0;
    const auto g = inverse_dft(s, &imag);
    EXPECT_LT(max_diff(f, g), 1e-14);
    EXPECT_LT(imag, 1e-14);
}

TEST(Spectral, ParsevalWithUnitNormalisation) {
    const DomainSpec d(1.0, {1.0, 1.0}, {10, 6});
    const auto f = random_field(d.mesh(), 11);
    const auto s = forward_dft(f);
    double e_x = 0.0, e_k = 0.0;
    for (double v : f.values) e_x += v * v;
    for (const auto& c : s.coeffs) e_k += std::norm(c);
    EXPECT_NEAR(e_x / static_cast<double>(f.size()), e_k, 1e-13);
}

TEST(Spectral, DerivativeOfTrigonometricPolynomialIsExact) {
    const double L = 2.0, k = 3.0 * M_PI / L;
    const DomainSpec d(L, {1.0, 1.0}, {16, 8});
    const auto f = sample(d, [k, L](const Point& x) { return std::sin(k * x[0]) * std::cos(M_PI * x[1] / L); });
    const auto dx = spectral_derivative(f, {1, 0});
    const auto want = sample(d, [k, L](const Point& x) { return k * std::cos(k * x[0]) * std::cos(M_PI * x[1] / L); });
    EXPECT_LT(max_diff(dx, want), 1e-13);
    const auto dxy = spectral_derivative(f, {1, 1});
    const auto want2 =
        sample(d, [k, L](const Point& x) { return -k * M_PI / L * std::cos(k * x[0]) * std::sin(M_PI * x[1] / L); });
    EXPECT_LT(max_diff(dxy, want2), 1e-13);
}

TEST(Spectral, PaddedDerivativeOfGaussian) {
    const DomainSpec d(8.0, {1.0, 1.0}, {64, 64});
    const auto f = sample(d, [](const Point& x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
    const auto plan = padding_from_factors(d, {2.0, 2.0});
    const auto lap = spectral_derivative(f, plan, {2, 0});
    const auto want = sample(d, [](const Point& x) { return (4 * x[0] * x[0] - 2) * std::exp(-x[0] * x[0] - x[1] * x[1]); });
    EXPECT_LT(max_diff(lap, want), 1e-12);
}

TEST(Spectral, DirectionalSecondDerivative) {
    const DomainSpec d(8.0, {1.0, 1.0, 1.0}, {64, 64, 64});
    const auto f = sample(d, [](const Point& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2); });
    const std::vector<double> n{0.6, 0.8, 0.0}, m{0.0, 0.0, 1.0};
    const auto got = directional_second_derivative(f, identity_padding(f.mesh), n, m);
    // d_n d_m e^{-r^2/2} = (n.x)(m.x) e^{-r^2/2} - (n.m) e^{-r^2/2}
    const auto want = sample(d, [&](const Point& x) {
        const double g = std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2);
        return (n[0] * x[0] + n[1] * x[1]) * x[2] * g;
    });
    EXPECT_LT(max_diff(got, want), 1e-12);
}

TEST(Spectral, EmbedAndRestrictRoundTrip) {
    const DomainSpec d(2.0, {1.0, 0.5}, {8, 4});
    const auto f = random_field(d.mesh(), 5);
    const auto plan = padding_from_factors(d, {2.5, 3.0});
    const auto big = zero_pad_embed(f, plan);
    EXPECT_EQ(big.mesh.count, (std::vector<std::size_t>{20, 12}));
    EXPECT_DOUBLE_EQ(big.mesh.half_width[0], 5.0);
    // the embedded samples keep their physical coordinates
    EXPECT_DOUBLE_EQ(big.mesh.coordinate(0, 6), f.mesh.coordinate(0, 0));
    double mass_f = 0.0, mass_big = 0.0;
    for (double v : f.values) mass_f += v;
    for (double v : big.values) mass_big += v;
    EXPECT_NEAR(mass_f, mass_big, 1e-14);
    EXPECT_EQ(restrict(big, d).values, f.values);
}

TEST(Spectral, RejectsBadInputs) {
    const DomainSpec d(1.0, {1.0}, {8});
    const ScalarField f(d);
    EXPECT_THROW(spectral_derivative(f, {5}), InvalidArgument);
    EXPECT_THROW(spectral_derivative(f, {1, 0}), InvalidArgument);
    EXPECT_THROW(spectral_derivative(f, {-1}), InvalidArgument);
    const DomainSpec other(2.0, {1.0}, {8});
    EXPECT_THROW(zero_pad_embed(f, practical_padding(other)), InvalidArgument);
    EXPECT_THROW(linear_combination(1.0, f, 1.0, ScalarField(other)), InvalidArgument);
}
