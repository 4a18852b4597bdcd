#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "irsplan/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Static reflecting-surface coverage planner: designs one fixed phase "
                 "pattern and an AP-subarea association for worst-case received power, "
                 "and reproduces the associated closed-form checks and sweeps."};
    app.require_subcommand(1);

    struct Args {
        std::string scenario;
        std::string out;
        std::uint64_t seed{};
        bool seed_set{false};
        int trials{};
        bool trials_set{false};
    };

    std::vector<std::pair<CLI::App*, std::shared_ptr<Args>>> subs;
    for (const char* name : {"synth", "associate", "evaluate", "sweep-j", "sweep-rician",
                             "validate", "theorems"}) {
        auto args = std::make_shared<Args>();
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--scenario", args->scenario, "scenario JSON file")->required();
        sub->add_option("--out", args->out, "output CSV file")->required();
        sub->add_option("--seed", args->seed, "override solver.seed")
            ->each([args](const std::string&) { args->seed_set = true; });
        sub->add_option("--trials", args->trials, "override experiment.trials")
            ->each([args](const std::string&) { args->trials_set = true; });
        subs.emplace_back(sub, args);
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [sub, args] : subs) {
        if (sub->parsed()) {
            irsplan::RunOptions options;
            if (args->seed_set)
                options.seed = args->seed;
            if (args->trials_set)
                options.trials = args->trials;
            return irsplan::run_subcommand(sub->get_name(), args->scenario, args->out, options);
        }
    }
    return irsplan::exit_usage;
}
