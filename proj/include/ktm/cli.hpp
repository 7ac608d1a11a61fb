#pragma once

// Batch commands behind the `ktm` executable: single solves, error tables, convergence
// studies and timing benchmarks. Each command writes its artifact and returns normally, or
// throws (IoError for unreadable inputs).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ktm/analysis.hpp"
#include "ktm/error.hpp"
#include "ktm/fixtures.hpp"
#include "ktm/io.hpp"
#include "ktm/kernels.hpp"
#include "ktm/solver.hpp"

namespace ktm::cli {

struct RunConfig {
    std::string command;
    std::string kernel;   // solve without fixture: poisson1d|poisson2d|poisson3d|coulomb2d|ddi3d|quasi2d|quadrupolar3d
    std::string fixture;  // registry name
    std::string table;    // cmd_table id
    fixtures::FixtureParams params;
    bool params_set = false;

    std::optional<double> L;  // per-command default when unset
    std::vector<double> gamma;  // default: isotropic in the kernel's dimension
    double h = 0.25;
    std::optional<std::vector<double>> padding;

    std::vector<double> h_values;
    std::vector<double> s_values;
    std::vector<double> gamma_values;
    std::vector<int> m_values;
    std::vector<std::size_t> n_values;

    std::string input;           // KTMG density file
    std::string output = "out";  // file (solve) or CSV path (others); "-" for stdout
    bool tensor = false;
    std::string cache_dir;
    int repeats = 3;
    std::size_t bench_n = 32;
};

// --- Config ------------------------------------------------------------------------------

inline fixtures::FixtureParams params_from_json(const nlohmann::json& j, fixtures::FixtureParams p) {
    auto vec3 = [](const nlohmann::json& v) {
        if (!v.is_array() || v.size() != 3) throw InvalidArgument("config: expected a 3-vector");
        return Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    };
    if (j.contains("sigma")) p.sigma = j["sigma"].get<double>();
    if (j.contains("gamma")) p.gamma = j["gamma"].get<double>();
    if (j.contains("shift")) p.shift = vec3(j["shift"]);
    if (j.contains("m")) p.m = j["m"].get<int>();
    if (j.contains("delta")) p.delta = vec3(j["delta"]);
    if (j.contains("eps")) p.eps = j["eps"].get<double>();
    if (j.contains("dipole_m")) p.dipole_m = vec3(j["dipole_m"]);
    if (j.contains("dipole_n")) p.dipole_n = vec3(j["dipole_n"]);
    return p;
}

/// Reads a JSON config file into `cfg`; keys absent from the file leave `cfg` untouched.
///
///   { "command": "solve", "fixture": "poisson3d_gaussian",
///     "domain": {"L": 8, "gamma": [1,1,1], "h": 0.25}, "padding": [3,3,3],
///     "params": {"sigma": 1.0954}, "sweep": {"h": [...], "S": [...], "gamma": [...], "m": [...], "N": [...]},
///     "output": "out/phi.ktmg", "tensor": false, "cache_dir": "..." }
inline void load_config(const std::filesystem::path& path, RunConfig& cfg) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("config " + path.string() + ": " + e.what());
    }
    try {
        if (j.contains("command")) cfg.command = j["command"].get<std::string>();
        if (j.contains("kernel")) cfg.kernel = j["kernel"].get<std::string>();
        if (j.contains("fixture")) cfg.fixture = j["fixture"].get<std::string>();
        if (j.contains("table")) cfg.table = j["table"].get<std::string>();
        if (j.contains("domain")) {
            const auto& d = j["domain"];
            if (d.contains("L")) cfg.L = d["L"].get<double>();
            if (d.contains("gamma")) cfg.gamma = d["gamma"].get<std::vector<double>>();
            if (d.contains("h")) cfg.h = d["h"].get<double>();
        }
        if (j.contains("padding")) cfg.padding = j["padding"].get<std::vector<double>>();
        if (j.contains("params")) {
            cfg.params = params_from_json(j["params"], cfg.params);
            cfg.params_set = true;
        }
        if (j.contains("sweep")) {
            const auto& s = j["sweep"];
            if (s.contains("h")) cfg.h_values = s["h"].get<std::vector<double>>();
            if (s.contains("S")) cfg.s_values = s["S"].get<std::vector<double>>();
            if (s.contains("gamma")) cfg.gamma_values = s["gamma"].get<std::vector<double>>();
            if (s.contains("m")) cfg.m_values = s["m"].get<std::vector<int>>();
            if (s.contains("N")) cfg.n_values = s["N"].get<std::vector<std::size_t>>();
        }
        if (j.contains("input")) cfg.input = j["input"].get<std::string>();
        if (j.contains("output")) cfg.output = j["output"].get<std::string>();
        if (j.contains("tensor")) cfg.tensor = j["tensor"].get<bool>();
        if (j.contains("cache_dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
        if (j.contains("repeats")) cfg.repeats = j["repeats"].get<int>();
        if (j.contains("bench_n")) cfg.bench_n = j["bench_n"].get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("config " + path.string() + ": " + e.what());
    }
}

inline KernelSpec kernel_from_name(const std::string& name, const fixtures::FixtureParams& p) {
    if (name == "poisson1d") return kernel::Poisson1D{};
    if (name == "poisson2d") return kernel::Poisson2D{};
    if (name == "poisson3d") return kernel::Poisson3D{};
    if (name == "coulomb2d") return kernel::Coulomb2D{};
    if (name == "ddi3d") return kernel::DDI3D{fixtures::normalized(p.dipole_m), fixtures::normalized(p.dipole_n)};
    if (name == "quasi2d") return kernel::QuasiDDI2D{p.eps, fixtures::normalized(p.dipole_n)};
    if (name == "quadrupolar3d") return kernel::Quadrupolar3D{};
    throw InvalidArgument("unknown kernel: " + name);
}

// --- Output helpers ------------------------------------------------------------------------

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4E", v);
    return buf;
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string factors(const std::vector<double>& s) {
    std::string out = "(";
    for (std::size_t j = 0; j < s.size(); ++j) out += (j ? ";" : "") + num(s[j]);
    return out + ")";
}

class CsvSink {
public:
    explicit CsvSink(const std::string& path) : path_(path) {
        if (path_ != "-") {
            const auto parent = std::filesystem::path(path_).parent_path();
            if (!parent.empty()) std::filesystem::create_directories(parent);
            file_.open(path_);
            if (!file_) throw IoError("cannot open for writing: " + path_);
        }
    }
    std::ostream& os() { return path_ == "-" ? std::cout : file_; }

private:
    std::string path_;
    std::ofstream file_;
};

/// A single padding factor applies to every axis.
inline std::vector<double> broadcast(const std::vector<double>& s, std::size_t d) {
    return s.size() == 1 ? std::vector<double>(d, s[0]) : s;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::vector<double> gamma_or_default(const RunConfig& cfg, std::size_t d) {
    if (cfg.gamma.empty()) return std::vector<double>(d, 1.0);
    if (cfg.gamma.size() != d) throw InvalidArgument("gamma must have one entry per dimension");
    return cfg.gamma;
}

}  // namespace detail

/// One relative-error evaluation of a fixture: solve on R_L^gamma with spacing h*gamma.
struct CellResult {
    double error = 0.0;
    std::vector<double> S;
    std::vector<std::size_t> N;
    double seconds = 0.0;
    std::uint64_t memory = 0;
};

inline CellResult run_fixture_cell(const fixtures::FixtureCase& f, double L, const std::vector<double>& gamma, double h,
                                   const std::optional<std::vector<double>>& S, bool derivative = false,
                                   bool tensor = false) {
    const auto domain = DomainSpec::from_spacing(L, gamma, h);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rho = sample(domain, f.density);
    ScalarField phi;
    PaddingPlan padding;
    MultiIndex alpha(domain.dim(), 0);
    if (derivative) alpha[0] = 1;
    if (tensor) {
        const auto plan = plan_tensor(domain, f.kernel, S);
        padding = plan.padding;
        phi = solve_derivative(plan, rho, alpha);
    } else {
        const auto plan = plan_ktm(domain, f.kernel, S);
        padding = plan.padding;
        phi = solve_derivative(plan, rho, alpha);
    }
    CellResult r;
    r.seconds = detail::seconds_since(t0);
    const auto exact = derivative ? fixtures::exact_dx_field(f, domain.mesh()) : f.exact_field(domain.mesh());
    r.error = relative_max_error(phi, exact);
    r.S = padding.factor;
    r.N = domain.counts();
    r.memory = estimate_memory(domain, padding, tensor ? MemoryMode::TensorExecute : MemoryMode::Plain);
    return r;
}

// --- solve ---------------------------------------------------------------------------------

/// Solves for one density (fixture or KTMG file) and writes <output> (potential grid) and
/// <output>.json (report). Returns the report.
inline nlohmann::json cmd_solve(const RunConfig& cfg) {
    std::optional<fixtures::FixtureCase> fix;
    KernelSpec kern;
    ScalarField rho;
    std::optional<DomainSpec> domain;

    if (!cfg.input.empty()) {
        if (!std::filesystem::exists(cfg.input)) throw IoError("input file not found: " + cfg.input);
        rho = io::read_grid(cfg.input);
        const auto& m = rho.mesh;
        std::vector<double> g(m.dim());
        for (std::size_t j = 0; j < m.dim(); ++j) g[j] = m.half_width[j] / m.half_width[0];
        domain.emplace(m.half_width[0], g, m.count);
        if (!(domain->mesh() == m)) throw InvalidArgument("input grid half-widths are not representable as L*gamma");
        if (cfg.kernel.empty() && cfg.fixture.empty()) throw InvalidArgument("solve: --kernel is required with --input");
        kern = cfg.kernel.empty() ? fixtures::make_fixture(cfg.fixture).kernel : kernel_from_name(cfg.kernel, cfg.params);
    } else {
        if (cfg.fixture.empty()) throw InvalidArgument("solve: either --fixture or --input is required");
        fix = fixtures::make_fixture(cfg.fixture, cfg.params_set ? cfg.params : fixtures::default_params(cfg.fixture));
        kern = fix->kernel;
        domain.emplace(DomainSpec::from_spacing(cfg.L.value_or(8.0), detail::gamma_or_default(cfg, fix->dim), cfg.h));
        rho = sample(*domain, fix->density);
    }
    if (kernel_dim(kern) != domain->dim()) throw InvalidArgument("kernel dimension does not match the density grid");

    std::optional<io::PlanCache> cache;
    if (!cfg.cache_dir.empty()) {
        cache.emplace(cfg.cache_dir);
    } else if (auto env = io::cache_dir_from_env()) {
        cache.emplace(*env);
    }
    const auto padding = cfg.padding ? padding_from_factors(*domain, detail::broadcast(*cfg.padding, domain->dim()))
                                     : practical_padding(*domain);

    const auto t0 = std::chrono::steady_clock::now();
    ScalarField phi;
    bool hit = false;
    if (cfg.tensor) {
        const auto plan = cache ? cache->tensor(*domain, kern, padding, &hit) : plan_tensor(*domain, kern, padding.factor);
        phi = apply_tensor(plan, rho);
    } else {
        const auto plan = cache ? cache->ktm(*domain, kern, padding, &hit) : plan_ktm(*domain, kern, padding.factor);
        phi = apply_ktm(plan, rho);
    }
    const double seconds = detail::seconds_since(t0);

    const std::filesystem::path out = cfg.output == "out" ? "out/phi.ktmg" : cfg.output;
    if (!out.parent_path().empty()) std::filesystem::create_directories(out.parent_path());
    io::write_grid(out, phi);

    nlohmann::json rep;
    rep["kernel"] = kernel_name(kern);
    if (fix) rep["fixture"] = fix->name;
    rep["N"] = domain->counts();
    std::vector<double> h(domain->dim());
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = domain->spacing(j);
    rep["h"] = h;
    rep["S"] = padding.factor;
    rep["G"] = padding.radius;
    rep["path"] = cfg.tensor ? "tensor" : "ktm";
    rep["cache_hit"] = hit;
    rep["wall_time"] = seconds;
    rep["est_memory"] =
        estimate_memory(*domain, padding, cfg.tensor ? MemoryMode::TensorExecute : MemoryMode::Plain);
    if (fix) rep["rel_max_error"] = relative_max_error(phi, fix->exact_field(domain->mesh()));
    std::ofstream os(out.string() + ".json");
    if (!os) throw IoError("cannot write report next to " + out.string());
    os << rep.dump(2) << '\n';
    return rep;
}

// --- table ---------------------------------------------------------------------------------

struct TableSpec {
    std::string id;
    std::string title;
    std::string fixture;
    fixtures::FixtureParams params;
    double L = 8.0;
    std::vector<double> s_values;      // S-by-h layout
    std::vector<double> h_values;
    std::vector<double> gamma_values;  // gamma layout (anisotropic tables)
    double h_factor = 0.25;            // h = h_factor * gamma in gamma layout
    bool derivative = false;
};

inline std::vector<std::string> table_ids() {
    return {"1", "1-case1", "1-case2", "3-1d", "3-2d", "4", "5-phi", "5-dphi", "6", "7-ddi", "7-quasi", "8"};
}

inline TableSpec table_spec(const std::string& id) {
    const std::vector<double> hs{2.0, 1.0, 0.5, 0.25};
    TableSpec t;
    t.id = id;
    t.h_values = hs;
    auto P = [](const std::string& f) { return fixtures::default_params(f); };
    if (id == "1") {
        t.title = "3D Poisson, isotropic Gaussian";
        t.fixture = "poisson3d_gaussian";
        t.params = P(t.fixture);
        t.s_values = {2, 3, 4};
    } else if (id == "1-case1" || id == "1-case2") {
        t.fixture = "poisson3d_gaussian";
        t.params = P(t.fixture);
        t.params.sigma = 2.0;
        t.gamma_values = {1.0, 0.5, 0.25, 0.125};
        if (id == "1-case1") {
            t.title = "3D Poisson, anisotropic Gaussian (single source)";
            t.L = 12.0;
            t.h_factor = 0.5;
        } else {
            t.title = "3D Poisson, anisotropic Gaussian (shifted pair)";
            t.L = 16.0;
            t.h_factor = 0.25;
            t.params.shift = {2, 2, 0};
            t.gamma_values = {1.0, 0.5};
        }
    } else if (id == "3-1d") {
        t.title = "1D Poisson, Gaussian";
        t.fixture = "poisson1d_gaussian";
        t.params = P(t.fixture);
        t.s_values = {1, 2, 3};
    } else if (id == "3-2d") {
        t.title = "2D Poisson, Gaussian";
        t.fixture = "poisson2d_gaussian";
        t.params = P(t.fixture);
        t.s_values = {2, 2.5, 3, 4};
    } else if (id == "4") {
        t.title = "2D Poisson, anisotropic source";
        t.fixture = "poisson2d_aniso";
        t.params = P(t.fixture);
        t.L = 10.0;
        t.gamma_values = {1.0, 0.5, 0.25, 0.125, 0.0625};
    } else if (id == "5-phi" || id == "5-dphi") {
        t.title = id == "5-phi" ? "2D Coulomb, potential" : "2D Coulomb, x-derivative";
        t.fixture = "coulomb2d_gaussian";
        t.params = P(t.fixture);
        t.s_values = {2, 2.5, 3, 4};
        t.derivative = id == "5-dphi";
    } else if (id == "6") {
        t.title = "2D Coulomb, anisotropic Gaussian";
        t.fixture = "coulomb2d_gaussian";
        t.params = P(t.fixture);
        t.params.sigma = 1.5;
        t.L = 12.0;
        t.gamma_values = {1.0, 0.5, 0.25, 0.125, 0.0625};
    } else if (id == "7-ddi") {
        t.title = "3D dipolar, Gaussian";
        t.fixture = "ddi3d_gaussian";
        t.params = P(t.fixture);
        t.s_values = {2, 3, 4};
    } else if (id == "7-quasi") {
        t.title = "quasi-2D dipolar, Gaussian";
        t.fixture = "quasi2d_gaussian";
        t.params = P(t.fixture);
        t.L = 12.0;
        t.s_values = {2, 2.5, 3, 4};
    } else if (id == "8") {
        t.title = "3D quadrupolar, Gaussian";
        t.fixture = "quadrupolar_gaussian";
        t.params = P(t.fixture);
        t.L = 12.0;
        t.s_values = {2, 3, 4};
    } else {
        throw InvalidArgument("unknown table id: " + id);
    }
    return t;
}

/// Writes the error table as CSV. S-by-h tables: header "S,h=..", one row per S.
/// Anisotropic tables: header "gamma,..", rows "E" and "S".
inline void cmd_table(const RunConfig& cfg) {
    auto t = table_spec(cfg.table);
    if (!cfg.h_values.empty()) t.h_values = cfg.h_values;
    if (!cfg.s_values.empty()) t.s_values = cfg.s_values;
    if (!cfg.gamma_values.empty()) t.gamma_values = cfg.gamma_values;
    if (cfg.params_set) t.params = cfg.params;
    const auto fix = fixtures::make_fixture(t.fixture, t.params);
    const std::size_t d = fix.dim;
    const double L = cfg.L.value_or(t.L);

    detail::CsvSink sink(cfg.output == "out" ? "out/table_" + t.id + ".csv" : cfg.output);
    auto& os = sink.os();
    if (!t.gamma_values.empty()) {
        std::vector<std::string> err, pad;
        for (double g : t.gamma_values) {
            std::vector<double> gamma(d, 1.0);
            gamma.back() = g;
            auto p = t.params;
            p.gamma = g;
            const auto f = fixtures::make_fixture(t.fixture, p);
            std::optional<std::vector<double>> S;
            if (cfg.padding) S = detail::broadcast(*cfg.padding, d);
            const auto r = run_fixture_cell(f, L, gamma, t.h_factor, S, false, cfg.tensor);
            err.push_back(detail::sci(r.error));
            pad.push_back(detail::factors(r.S));
        }
        os << "gamma";
        for (double g : t.gamma_values) os << ',' << detail::num(g);
        os << "\nE";
        for (const auto& e : err) os << ',' << e;
        os << "\nS";
        for (const auto& p : pad) os << ',' << p;
        os << '\n';
        return;
    }
    if (t.s_values.empty() || t.h_values.empty()) throw InvalidArgument("table: empty S or h sweep");
    os << "S";
    for (double h : t.h_values) os << ",h=" << detail::num(h);
    os << '\n';
    for (double s : t.s_values) {
        os << detail::num(s);
        for (double h : t.h_values) {
            const auto r = run_fixture_cell(fix, L, std::vector<double>(d, 1.0), h, std::vector<double>(d, s),
                                            t.derivative, cfg.tensor);
            os << ',' << detail::sci(r.error);
        }
        os << '\n';
    }
}

// --- convergence ---------------------------------------------------------------------------

struct ConvergencePoint {
    std::string quantity;  // "drho" or "dphi"
    int m = 0;
    std::size_t N = 0;
    double error = 0.0;
};

/// Errors of d/dx rho_N and d/dx Phi_N for the compact densities (1 - |x - delta|^2)^m on
/// [-L, L]^d, L = 2, for every (m, N).
inline std::vector<ConvergencePoint> convergence_study(const std::string& fixture, const std::vector<int>& ms,
                                                       const std::vector<std::size_t>& ns, const Vec3& delta,
                                                       double L = 2.0) {
    std::vector<ConvergencePoint> out;
    for (int m : ms) {
        auto p = fixtures::default_params(fixture);
        p.m = m;
        p.delta = delta;
        const auto f = fixtures::make_fixture(fixture, p);
        const std::size_t d = f.dim;
        for (std::size_t n : ns) {
            const auto domain = DomainSpec(L, std::vector<double>(d, 1.0), std::vector<std::size_t>(d, n));
            const auto rho = sample(domain, f.density);
            MultiIndex ax(d, 0);
            ax[0] = 1;
            const auto drho = spectral_derivative(rho, ax);
            out.push_back({"drho", m, n, relative_max_error(drho, sample(domain, f.density_dx))});
            const auto plan = plan_ktm(domain, f.kernel);
            const auto dphi = solve_derivative(plan, rho, ax);
            out.push_back({"dphi", m, n, relative_max_error(dphi, fixtures::exact_dx_field(f, domain.mesh()))});
        }
    }
    return out;
}

inline double fitted_order(const std::vector<ConvergencePoint>& pts, const std::string& quantity, int m) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& p : pts)
        if (p.quantity == quantity && p.m == m) pairs.emplace_back(static_cast<double>(p.N), p.error);
    return fit_convergence_order(pairs);
}

/// CSV: fixture,quantity,m,N,error,order (order repeated on every row of its curve).
inline void cmd_convergence(const RunConfig& cfg) {
    const std::string fixture = cfg.fixture.empty() ? "nonsmooth_poisson3d" : cfg.fixture;
    if (fixture.rfind("nonsmooth_", 0) != 0) throw InvalidArgument("convergence: fixture must be a nonsmooth_* case");
    const std::vector<int> ms = cfg.m_values.empty() ? std::vector<int>{2, 3, 4} : cfg.m_values;
    std::vector<std::size_t> ns = cfg.n_values;
    if (ns.empty()) ns = fixture == "nonsmooth_poisson3d" ? std::vector<std::size_t>{16, 32, 64, 128}
                                                          : std::vector<std::size_t>{32, 64, 128, 256};
    const Vec3 delta = cfg.params_set ? cfg.params.delta : Vec3{0, 0, 0};
    const auto pts = convergence_study(fixture, ms, ns, delta, cfg.L.value_or(2.0));

    detail::CsvSink sink(cfg.output == "out" ? "out/convergence_" + fixture + ".csv" : cfg.output);
    auto& os = sink.os();
    os << "fixture,quantity,m,N,error,order\n";
    for (const char* q : {"drho", "dphi"})
        for (int m : ms) {
            std::string order = "nan";
            try {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3f", fitted_order(pts, q, m));
                order = buf;
            } catch (const InvalidArgument&) {
            }
            for (const auto& p : pts)
                if (p.quantity == q && p.m == m)
                    os << fixture << ',' << q << ',' << m << ',' << p.N << ',' << detail::sci(p.error) << ',' << order
                       << '\n';
        }
}

// --- bench ---------------------------------------------------------------------------------

struct BenchRow {
    std::string path;  // "ktm" or "tensor"
    double gamma_f = 1.0;
    std::vector<double> S;
    double plan_time = 0.0;
    double apply_time = 0.0;  // median
    std::uint64_t est_memory = 0;
    bool cache_hit = false;
};

/// Times plan and apply for a Gaussian density on N^d points while the last axis shrinks
/// (gamma_d = 1 / gamma_f). Kernel: cfg.kernel, default poisson3d.
inline std::vector<BenchRow> bench_rows(const RunConfig& cfg) {
    const std::vector<double> gammas = cfg.gamma_values.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.125}
                                                                 : cfg.gamma_values;
    const int reps = std::max(3, cfg.repeats);
    const auto kern = kernel_from_name(cfg.kernel.empty() ? "poisson3d" : cfg.kernel,
                                       cfg.params_set ? cfg.params : fixtures::FixtureParams{});
    const std::size_t d = kernel_dim(kern);
    std::optional<io::PlanCache> cache;
    if (!cfg.cache_dir.empty()) {
        cache.emplace(cfg.cache_dir);
    } else if (auto env = io::cache_dir_from_env()) {
        cache.emplace(*env);
    }
    const std::size_t n = cfg.bench_n;
    const double sigma = cfg.params_set ? cfg.params.sigma : std::sqrt(1.2);
    std::vector<BenchRow> rows;
    for (const bool tensor : {false, true}) {
        for (double g : gammas) {
            std::vector<double> gamma(d, 1.0);
            gamma.back() = g;
            const DomainSpec domain(cfg.L.value_or(8.0), gamma, std::vector<std::size_t>(d, n));
            const auto rho = sample(domain, fixtures::gaussian_density(sigma, d, g));
            const auto padding = practical_padding(domain);
            BenchRow row{tensor ? "tensor" : "ktm", 1.0 / g, padding.factor};
            std::vector<double> times;
            const auto t0 = std::chrono::steady_clock::now();
            if (tensor) {
                const auto plan = cache ? cache->tensor(domain, kern, padding, &row.cache_hit)
                                        : plan_tensor(domain, kern, padding.factor);
                row.plan_time = detail::seconds_since(t0);
                for (int r = 0; r < reps; ++r) {
                    const auto t1 = std::chrono::steady_clock::now();
                    const auto phi = apply_tensor(plan, rho);
                    times.push_back(detail::seconds_since(t1));
                }
                row.est_memory = estimate_memory(domain, padding, MemoryMode::TensorExecute);
            } else {
                const auto plan = cache ? cache->ktm(domain, kern, padding, &row.cache_hit)
                                        : plan_ktm(domain, kern, padding.factor);
                row.plan_time = detail::seconds_since(t0);
                for (int r = 0; r < reps; ++r) {
                    const auto t1 = std::chrono::steady_clock::now();
                    const auto phi = apply_ktm(plan, rho);
                    times.push_back(detail::seconds_since(t1));
                }
                row.est_memory = estimate_memory(domain, padding, MemoryMode::Plain);
            }
            std::sort(times.begin(), times.end());
            row.apply_time = times[times.size() / 2];
            rows.push_back(row);
        }
    }
    return rows;
}

/// CSV: path,gamma_f,S,plan_time,apply_time,est_memory,cache_hit.
inline std::vector<BenchRow> cmd_bench(const RunConfig& cfg) {
    const auto rows = bench_rows(cfg);
    detail::CsvSink sink(cfg.output == "out" ? "out/bench.csv" : cfg.output);
    auto& os = sink.os();
    os << "path,gamma_f,S,plan_time,apply_time,est_memory,cache_hit\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%g,%s,%.6f,%.6f,%llu,%d\n", r.path.c_str(), r.gamma_f,
                      detail::factors(r.S).c_str(), r.plan_time, r.apply_time,
                      static_cast<unsigned long long>(r.est_memory), r.cache_hit ? 1 : 0);
        os << buf;
    }
    return rows;
}

}  // namespace ktm::cli
