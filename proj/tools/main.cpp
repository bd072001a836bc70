#include "minnorm/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

struct CommonFlags {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int realizations = 0;
    bool quiet = false;
};

void attach(CLI::App* sub, CommonFlags& fl) {
    sub->add_option("--config", fl.config, "experiment config file (key = value lines)");
    sub->add_option("--out", fl.out, "output directory");
    sub->add_option("--seed", fl.seed, "master seed")->each([&](const std::string&) {
        fl.seed_set = true;
    });
    sub->add_option("--realizations", fl.realizations, "number of sample-set realizations");
    sub->add_flag("--quiet", fl.quiet, "suppress progress output");
}

int run(const std::string& kind, const CommonFlags& fl) {
    minnorm::ExperimentConfig cfg;
    try {
        if (!fl.config.empty()) {
            cfg = minnorm::ExperimentConfig::load(fl.config);
            if (cfg.experiment_explicit && cfg.experiment != kind)
                throw std::invalid_argument("config experiment '" + cfg.experiment +
                                            "' does not match subcommand '" + kind + "'");
        }
        cfg.experiment = kind;
        if (fl.seed_set) cfg.seed = fl.seed;
        if (fl.realizations > 0) cfg.realizations = fl.realizations;
        if (fl.quiet) cfg.quiet = 1;
        std::filesystem::create_directories(fl.out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    minnorm::RunResult res = minnorm::run_experiment(cfg, fl.out);
    if (!res.message.empty() && (!cfg.quiet || res.exit_code != 0))
        std::fprintf(res.exit_code ? stderr : stdout, "%s\n", res.message.c_str());
    if (!cfg.quiet)
        for (const auto& f : res.outputs) std::printf("wrote %s\n", f.c_str());
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum weighted-norm interpolation experiments"};
    app.require_subcommand(1);
    CommonFlags fl;
    const char* kinds[] = {"runge-sweep", "rate-study", "ntk-check", "kernel-eval",
                           "near-optimal"};
    const char* descs[] = {
        "double-descent sweep for the Runge target on the circle",
        "interpolation error vs mesh norm with a log-log slope fit",
        "NTK Gram spectrum on symmetric and nearly-symmetric sphere sets",
        "tabulate truncated kernels, reference kernels, and tail bounds",
        "interpolants that are also near-best L2 approximations",
    };
    std::string chosen;
    for (int i = 0; i < 5; ++i) {
        auto* sub = app.add_subcommand(kinds[i], descs[i]);
        attach(sub, fl);
        sub->callback([&chosen, k = std::string(kinds[i])] { chosen = k; });
    }
    CLI11_PARSE(app, argc, argv);
    return run(chosen, fl);
}
