#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "levy/config.hpp"
#include "levy/errors.hpp"
#include "levy/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResolution = 3;

void apply_thread_cap() {
    const char* env = std::getenv("LEVY_SQUAREFN_THREADS");
    if (!env || !*env) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw levy::UsageError(std::string("LEVY_SQUAREFN_THREADS must be a positive integer, got '") + env + "'");
    omp_set_num_threads(int(n));
}

void print_summary(const levy::SuiteResult& r) {
    for (const levy::VerificationReport& v : r.reports) {
        std::string tag;
        if (v.details.contains("p")) tag = " p=" + v.details["p"].dump();
        if (v.details.contains("label")) tag += " " + v.details["label"].get<std::string>();
        std::printf("%-4s %-30s rel_error=%.3e tol=%.1e%s\n", v.passed ? "PASS" : "FAIL", v.identity.c_str(),
                    v.rel_error, v.tolerance, tag.c_str());
    }
    for (const std::string& n : r.notes) std::printf("note %s\n", n.c_str());
    std::printf("%s: %s (%zu reports, %.1f s)\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.reports.size(),
                r.wall_clock_s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Levy semigroup square-function verification"};
    app.require_subcommand(1);

    std::string config_path, suite, out_dir;
    std::uint64_t seed = 0;
    CLI::App* run = app.add_subcommand("run", "run a verification suite");
    run->add_option("--config", config_path, "TOML configuration")->required();
    run->add_option("--suite", suite, "symbol, density, hardy-stein, square-fn, multiplier, mc or all")->required();
    CLI::Option* out_opt = run->add_option("--out", out_dir, "output directory");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "master seed");

    levy::ExportRequest req;
    std::string export_config, export_out;
    CLI::App* exp = app.add_subcommand("export", "write one field as csv or raw");
    exp->add_option("--field", req.field, "f, density, symbol, semigroup, G, Gtilde, Gstar or maximal")->required();
    exp->add_option("--format", req.format, "csv or raw")->required();
    exp->add_option("--config", export_config, "TOML configuration (defaults when omitted)");
    CLI::Option* exp_out = exp->add_option("--out", export_out, "output directory");
    exp->add_option("--member", req.member, "family member label");
    exp->add_option("--t", req.t, "time for density and semigroup fields");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        apply_thread_cap();
        if (*run) {
            levy::RunConfig cfg = levy::load_config(config_path);
            if (*out_opt) cfg.output_dir = out_dir;
            if (*seed_opt) cfg.seed = seed;
            cfg.validate();
            const auto& known = levy::known_suites();
            if (std::find(known.begin(), known.end(), suite) == known.end())
                throw levy::UsageError("unknown suite '" + suite + "'");
            const levy::SuiteResult r = levy::run_suite(cfg, suite);
            print_summary(r);
            return r.passed ? kExitPass : kExitFail;
        }
        levy::RunConfig cfg = export_config.empty() ? levy::RunConfig{} : levy::load_config(export_config);
        if (*exp_out) cfg.output_dir = export_out;
        cfg.validate();
        if (!(req.t > 0.0)) throw levy::UsageError("--t must be positive");
        for (const std::string& p : levy::export_field(cfg, req)) std::printf("%s\n", p.c_str());
        return kExitPass;
    } catch (const levy::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const levy::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const levy::ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return kExitResolution;
    } catch (const levy::CostGuardError& e) {
        std::cerr << "cost guard: " << e.what() << "\n";
        return kExitResolution;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    }
}
