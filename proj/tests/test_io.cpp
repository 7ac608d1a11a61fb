#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "ktm/io.hpp"

using namespace ktm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("ktm_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(GridFile, RoundTripIsBitExact) {
    const auto dir = scratch("grid");
    const DomainSpec d(1.5, {1.0, 0.5, 0.25}, {4, 6, 2});
    std::mt19937_64 rng(1);
    ScalarField f(d);
    for (auto& v : f.values) v = std::ldexp(static_cast<double>(rng()), -40) - 1e6;
    f[0] = -0.0;
    f[1] = 5e-324;
    io::write_grid(dir / "f.ktmg", f);
    const auto g = io::read_grid(dir / "f.ktmg");
    EXPECT_EQ(g.mesh.count, f.mesh.count);
    EXPECT_EQ(g.mesh.half_width, f.mesh.half_width);
    EXPECT_EQ(std::memcmp(g.values.data(), f.values.data(), f.values.size() * sizeof(double)), 0);
}

TEST(GridFile, HeaderLayout) {
    const auto dir = scratch("layout");
    ScalarField f(Mesh{{2.0}, {2}}, {1.0, 2.0});
    io::write_grid(dir / "f.ktmg", f);
    std::ifstream is(dir / "f.ktmg", std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(is)), {});
    ASSERT_EQ(bytes.size(), 4u + 4 + 4 + 4 + 8 + 16);
    EXPECT_EQ(std::string(bytes.data(), 4), "KTMG");
    std::uint32_t version, dim, count;
    std::memcpy(&version, &bytes[4], 4);
    std::memcpy(&dim, &bytes[8], 4);
    std::memcpy(&count, &bytes[12], 4);
    EXPECT_EQ(version, 1u);
    EXPECT_EQ(dim, 1u);
    EXPECT_EQ(count, 2u);
}

TEST(GridFile, RejectsBadFiles) {
    const auto dir = scratch("bad");
    EXPECT_THROW(io::read_grid(dir / "missing.ktmg"), IoError);
    std::ofstream(dir / "junk.ktmg") << "NOPE and some more bytes";
    EXPECT_THROW(io::read_grid(dir / "junk.ktmg"), IoError);
    io::write_grid(dir / "ok.ktmg", ScalarField(Mesh{{1.0}, {8}}));
    fs::resize_file(dir / "ok.ktmg", fs::file_size(dir / "ok.ktmg") - 8);
    try {
        io::read_grid(dir / "ok.ktmg");
        FAIL();
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("ok.ktmg"), std::string::npos);
    }
}

TEST(CacheKey, StableAndSensitive) {
    const DomainSpec d(8.0, {1.0, 1.0}, {32, 32});
    const auto p = practical_padding(d);
    const auto k = io::cache_key("ktm", kernel::Coulomb2D{}, d, p);
    EXPECT_EQ(k.size(), 16u);
    EXPECT_EQ(k, io::cache_key("ktm", kernel::Coulomb2D{}, d, p));
    EXPECT_NE(k, io::cache_key("tensor", kernel::Coulomb2D{}, d, p));
    EXPECT_NE(k, io::cache_key("ktm", kernel::Poisson2D{}, d, p));
    EXPECT_NE(k, io::cache_key("ktm", kernel::Coulomb2D{}, d, padding_from_factors(d, {3, 3})));
    EXPECT_NE(k, io::cache_key("ktm", kernel::Coulomb2D{}, DomainSpec(8.0, {1.0, 0.5}, {32, 32}), p));
    EXPECT_NE(io::cache_key("ktm", kernel::QuasiDDI2D{0.2, {0, 0, 1}}, d, p),
              io::cache_key("ktm", kernel::QuasiDDI2D{0.2000001, {0, 0, 1}}, d, p));
    // FNV-1a reference value
    EXPECT_EQ(io::fnv1a("a"), 0xaf63dc4c8601ec8cull);
}

TEST(PlanCache, SecondLookupHitsAndReproduces) {
    const auto dir = scratch("cache");
    io::PlanCache cache(dir);
    const DomainSpec d(4.0, {1.0, 0.5}, {16, 16});
    const auto p = practical_padding(d);
    const KernelSpec k = kernel::Coulomb2D{};
    ScalarField rho = sample(d, [](const Point& x) { return std::exp(-x[0] * x[0] - 4 * x[1] * x[1]); });
    bool hit = true;
    const auto a = cache.ktm(d, k, p, &hit);
    EXPECT_FALSE(hit);
    const auto b = cache.ktm(d, k, p, &hit);
    EXPECT_TRUE(hit);
    EXPECT_EQ(a.uhat.values, b.uhat.values);
    EXPECT_EQ(apply_ktm(a, rho).values, apply_ktm(b, rho).values);

    const auto t1 = cache.tensor(d, k, p, &hit);
    EXPECT_FALSE(hit);
    const auto t2 = cache.tensor(d, k, p, &hit);
    EXPECT_TRUE(hit);
    EXPECT_EQ(apply_tensor(t1, rho).values, apply_tensor(t2, rho).values);

    const auto meta = io::sidecar("ktm", k, d, p);
    EXPECT_EQ(meta["key"], io::cache_key("ktm", k, d, p));
    EXPECT_EQ(meta["format_version"], 1);
}

TEST(PlanCache, MismatchedSidecarIsAMiss) {
    const auto dir = scratch("collide");
    io::PlanCache cache(dir);
    const DomainSpec d(4.0, {1.0}, {16});
    const auto p = practical_padding(d);
    cache.ktm(d, kernel::Poisson1D{}, p);
    const auto key = io::cache_key("ktm", kernel::Poisson1D{}, d, p);
    auto meta = io::sidecar("ktm", kernel::Poisson1D{}, d, p);
    meta["kernel"] = "something-else";
    std::ofstream(dir / (key + ".json")) << meta.dump();
    bool hit = true;
    cache.ktm(d, kernel::Poisson1D{}, p, &hit);
    EXPECT_FALSE(hit);
}

TEST(PlanCache, EnvironmentVariable) {
    ::setenv(io::kCacheEnv, "/tmp/ktm-env-cache", 1);
    EXPECT_EQ(io::cache_dir_from_env().value(), fs::path("/tmp/ktm-env-cache"));
    ::unsetenv(io::kCacheEnv);
    EXPECT_FALSE(io::cache_dir_from_env().has_value());
}
