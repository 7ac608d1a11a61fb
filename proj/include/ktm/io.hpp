#pragma once

// Binary grid files, plan sidecars and the on-disk plan cache.
//
// Grid file layout (little-endian): "KTMG", u32 version, u32 dim, u32 count[dim],
// f64 half_width[dim], f64 payload[prod count] in row-major order.

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ktm/error.hpp"
#include "ktm/kernels.hpp"
#include "ktm/solver.hpp"
#include "ktm/spectral.hpp"

namespace ktm::io {

inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr char kMagic[4] = {'K', 'T', 'M', 'G'};
inline constexpr const char* kCacheEnv = "KTM_CACHE_DIR";

static_assert(std::endian::native == std::endian::little, "grid I/O assumes a little-endian host");

namespace detail {

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is, const std::string& path) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw IoError("truncated grid file: " + path);
    return v;
}

}  // namespace detail

inline void write_grid(const std::filesystem::path& path, const ScalarField& field) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    os.write(kMagic, 4);
    detail::put<std::uint32_t>(os, kFormatVersion);
    detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(field.dim()));
    for (auto n : field.mesh.count) detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(n));
    for (double a : field.mesh.half_width) detail::put<double>(os, a);
    os.write(reinterpret_cast<const char*>(field.values.data()),
             static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!os) throw IoError("write failed: " + path.string());
}

inline ScalarField read_grid(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open grid file: " + path.string());
    const std::string p = path.string();
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw IoError("not a KTMG grid file: " + p);
    const auto version = detail::get<std::uint32_t>(is, p);
    if (version != kFormatVersion) throw IoError("unsupported grid format version in " + p);
    const auto dim = detail::get<std::uint32_t>(is, p);
    if (dim < 1 || dim > 3) throw IoError("invalid dimension in " + p);
    Mesh mesh;
    for (std::uint32_t j = 0; j < dim; ++j) mesh.count.push_back(detail::get<std::uint32_t>(is, p));
    for (std::uint32_t j = 0; j < dim; ++j) mesh.half_width.push_back(detail::get<double>(is, p));
    std::vector<double> values(mesh.size());
    if (!is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double))))
        throw IoError("truncated grid payload: " + p);
    return ScalarField(std::move(mesh), std::move(values));
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string plan_identity(const std::string& kind, const KernelSpec& kernel, const DomainSpec& domain,
                                 const PaddingPlan& padding) {
    std::ostringstream os;
    os.precision(17);
    os << kind << '|' << kernel_name(kernel) << '|' << domain.describe() << "|S=";
    for (double s : padding.factor) os << s << ',';
    os << "|G=" << padding.radius << "|v" << kFormatVersion;
    return os.str();
}

/// Hex cache key over (plan kind, kernel, domain, S, G, format version).
inline std::string cache_key(const std::string& kind, const KernelSpec& kernel, const DomainSpec& domain,
                             const PaddingPlan& padding) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(plan_identity(kind, kernel, domain, padding))));
    return buf;
}

inline nlohmann::json sidecar(const std::string& kind, const KernelSpec& kernel, const DomainSpec& domain,
                              const PaddingPlan& padding) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["plan"] = kind;
    j["kernel"] = kernel_name(kernel);
    j["domain"] = {{"L", domain.base_half_width()}, {"gamma", domain.gammas()}, {"N", domain.counts()}};
    j["S"] = padding.factor;
    j["padded_N"] = padding.padded_count;
    j["G"] = padding.radius;
    j["key"] = cache_key(kind, kernel, domain, padding);
    return j;
}

/// Cache directory from the environment, if set.
inline std::optional<std::filesystem::path> cache_dir_from_env() {
    if (const char* v = std::getenv(kCacheEnv); v && *v) return std::filesystem::path(v);
    return std::nullopt;
}

/// Plan store keyed by cache_key; files are <key>.ktmg plus <key>.json.
class PlanCache {
public:
    explicit PlanCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());
    }

    const std::filesystem::path& dir() const noexcept { return dir_; }

    KTMPlan ktm(const DomainSpec& domain, const KernelSpec& kernel, const PaddingPlan& padding, bool* hit = nullptr) {
        const auto key = cache_key("ktm", kernel, domain, padding);
        if (auto g = load(key, kernel, domain, padding, "ktm")) {
            if (hit) *hit = true;
            TruncatedKernelFT u{std::move(g->values), padding.radius, kernel, padding.padded_count};
            return KTMPlan{domain, padding, std::move(u)};
        }
        if (hit) *hit = false;
        KTMPlan plan = plan_ktm(domain, kernel, padding.factor);
        store(key, ScalarField(padding.padded_mesh(), plan.uhat.values), sidecar("ktm", kernel, domain, padding));
        return plan;
    }

    ConvolutionPlan tensor(const DomainSpec& domain, const KernelSpec& kernel, const PaddingPlan& padding,
                           bool* hit = nullptr) {
        const auto key = cache_key("tensor", kernel, domain, padding);
        if (auto g = load(key, kernel, domain, padding, "tensor")) {
            if (hit) *hit = true;
            return tensor_plan_from_wrapped(domain, padding, kernel, g->values);
        }
        if (hit) *hit = false;
        detail_check(domain, kernel);
        std::vector<double> wrapped;
        {
            const auto uhat = uhat_grid(kernel, padding);
            wrapped = wrap_tensor(convolution_tensor(domain, uhat, padding));
        }
        Mesh m;
        for (std::size_t j = 0; j < domain.dim(); ++j) {
            m.count.push_back(2 * domain.count(j));
            m.half_width.push_back(2 * domain.half_width(j));
        }
        store(key, ScalarField(m, wrapped), sidecar("tensor", kernel, domain, padding));
        return tensor_plan_from_wrapped(domain, padding, kernel, wrapped);
    }

private:
    static void detail_check(const DomainSpec& domain, const KernelSpec& kernel) {
        ::ktm::detail::check_kernel_domain(domain, kernel);
    }

    std::optional<ScalarField> load(const std::string& key, const KernelSpec& kernel, const DomainSpec& domain,
                                    const PaddingPlan& padding, const std::string& kind) const {
        const auto grid = dir_ / (key + ".ktmg");
        const auto meta = dir_ / (key + ".json");
        if (!std::filesystem::exists(grid) || !std::filesystem::exists(meta)) return std::nullopt;
        try {
            std::ifstream is(meta);
            const auto j = nlohmann::json::parse(is);
            // guard against hash collisions
            if (j != sidecar(kind, kernel, domain, padding)) return std::nullopt;
            return read_grid(grid);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void store(const std::string& key, const ScalarField& data, const nlohmann::json& meta) const {
        write_grid(dir_ / (key + ".ktmg"), data);
        std::ofstream os(dir_ / (key + ".json"));
        if (!os) throw IoError("cannot write sidecar in " + dir_.string());
        os << meta.dump(2) << '\n';
    }

    std::filesystem::path dir_;
};

}  // namespace ktm::io
