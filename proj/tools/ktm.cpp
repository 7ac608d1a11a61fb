// ktm: solve | table | convergence | bench

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ktm/cli.hpp"

namespace {

// Flags are parsed into these, then laid over the config file.
struct Overrides {
    std::string config;
    std::string kernel, fixture, table, input, output, cache_dir;
    double L = 0.0, h = 0.0, sigma = 0.0, gamma_param = 0.0;
    std::vector<double> gamma, padding, hs, ss, gs;
    std::vector<int> ms;
    std::vector<std::size_t> ns;
    int m = 0, repeats = 0;
    std::size_t bench_n = 0;
    std::vector<double> delta;
    bool tensor = false;
};

void add_common(CLI::App* app, Overrides& o) {
    app->add_option("-c,--config", o.config, "JSON config file (flags override it)");
    app->add_option("-o,--output", o.output, "output path ('-' for stdout on CSV commands)");
    app->add_option("--L", o.L, "base half-width L");
    app->add_option("--padding", o.padding, "zero-padding factor per axis (default: optimal)")->expected(1, 3);
    app->add_flag("--tensor", o.tensor, "use the precomputed convolution tensor");
    app->add_option("--cache-dir", o.cache_dir, "plan cache directory (default: $KTM_CACHE_DIR)");
    app->add_option("--sigma", o.sigma, "Gaussian width of the fixture");
}

ktm::cli::RunConfig merge(const std::string& command, const Overrides& o) {
    ktm::cli::RunConfig cfg;
    if (!o.config.empty()) ktm::cli::load_config(o.config, cfg);
    cfg.command = command;
    if (!o.kernel.empty()) cfg.kernel = o.kernel;
    if (!o.fixture.empty()) cfg.fixture = o.fixture;
    if (!o.table.empty()) cfg.table = o.table;
    if (!o.input.empty()) cfg.input = o.input;
    if (!o.output.empty()) cfg.output = o.output;
    if (!o.cache_dir.empty()) cfg.cache_dir = o.cache_dir;
    if (o.L > 0) cfg.L = o.L;
    if (o.h > 0) cfg.h = o.h;
    if (!o.gamma.empty()) cfg.gamma = o.gamma;
    if (!o.padding.empty()) cfg.padding = o.padding;
    if (!o.hs.empty()) cfg.h_values = o.hs;
    if (!o.ss.empty()) cfg.s_values = o.ss;
    if (!o.gs.empty()) cfg.gamma_values = o.gs;
    if (!o.ms.empty()) cfg.m_values = o.ms;
    if (!o.ns.empty()) cfg.n_values = o.ns;
    if (o.repeats > 0) cfg.repeats = o.repeats;
    if (o.bench_n > 0) cfg.bench_n = o.bench_n;
    if (o.tensor) cfg.tensor = true;

    const std::string fx = !cfg.fixture.empty() ? cfg.fixture
                           : command == "convergence" ? "nonsmooth_poisson3d"
                                                      : "";
    if (o.sigma > 0 || o.gamma_param > 0 || o.m > 0 || !o.delta.empty()) {
        if (!cfg.params_set) cfg.params = fx.empty() ? ktm::fixtures::FixtureParams{} : ktm::fixtures::default_params(fx);
        cfg.params_set = true;
        if (o.sigma > 0) cfg.params.sigma = o.sigma;
        if (o.gamma_param > 0) cfg.params.gamma = o.gamma_param;
        if (o.m > 0) cfg.params.m = o.m;
        if (!o.delta.empty()) {
            if (o.delta.size() > 3) throw ktm::InvalidArgument("--delta takes at most three components");
            for (std::size_t j = 0; j < o.delta.size(); ++j) cfg.params.delta[j] = o.delta[j];
        }
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-space convolution solver (kernel truncation with optimal zero-padding)"};
    app.require_subcommand(1);
    Overrides o;

    auto* solve = app.add_subcommand("solve", "solve for one density; writes a KTMG grid and a JSON report");
    add_common(solve, o);
    solve->add_option("--kernel", o.kernel, "poisson1d|poisson2d|poisson3d|coulomb2d|ddi3d|quasi2d|quadrupolar3d");
    solve->add_option("--fixture", o.fixture, "built-in test density with known potential");
    solve->add_option("-i,--input", o.input, "density grid (KTMG)");
    solve->add_option("--gamma", o.gamma, "aspect ratios per axis")->expected(1, 3);
    solve->add_option("--spacing", o.h, "grid spacing h on the unit-aspect axis");
    solve->add_option("--gamma-param", o.gamma_param, "anisotropy of the fixture density");

    auto* table = app.add_subcommand("table", "error table as CSV");
    add_common(table, o);
    table->add_option("-t,--table", o.table, "table id")
        ->required()
        ->check(CLI::IsMember(ktm::cli::table_ids()));
    table->add_option("--h-values", o.hs)->expected(1, 16);
    table->add_option("--s-values", o.ss)->expected(1, 16);
    table->add_option("--gamma-values", o.gs)->expected(1, 16);

    auto* conv = app.add_subcommand("convergence", "derivative convergence orders for compact densities");
    add_common(conv, o);
    conv->add_option("--fixture", o.fixture, "nonsmooth_poisson1d|2d|3d|nonsmooth_coulomb2d");
    conv->add_option("--m-values", o.ms)->expected(1, 6);
    conv->add_option("--n-values", o.ns)->expected(1, 16);
    conv->add_option("--delta", o.delta, "centre shift of the density")->expected(1, 3);

    auto* bench = app.add_subcommand("bench", "plan/apply timings against anisotropy");
    add_common(bench, o);
    bench->add_option("--gamma-values", o.gs)->expected(1, 16);
    bench->add_option("--kernel", o.kernel, "kernel (default poisson3d)");
    bench->add_option("--n", o.bench_n, "points per axis");
    bench->add_option("--repeats", o.repeats, "apply repetitions (median, at least 3)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            const auto rep = ktm::cli::cmd_solve(merge("solve", o));
            std::cout << rep.dump(2) << '\n';
        } else if (table->parsed()) {
            ktm::cli::cmd_table(merge("table", o));
        } else if (conv->parsed()) {
            ktm::cli::cmd_convergence(merge("convergence", o));
        } else if (bench->parsed()) {
            ktm::cli::cmd_bench(merge("bench", o));
        }
    } catch (const ktm::IoError& e) {
        std::fprintf(stderr, "ktm: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ktm: %s\n", e.what());
        return 1;
    }
    return 0;
}
