// Command-line front end; links only the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "periraise.h"

namespace {

int report(int status, const std::string& what) {
    if (status != PR_OK) std::cerr << what << ": " << pr_last_error() << "\n";
    return status;
}

std::optional<std::string> read_config(const std::string& path, int& status) {
    status = PR_OK;
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open config file: " << path << "\n";
        status = PR_ERR_USAGE;
        return std::nullopt;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-thrust pericenter-raising guidance: train, plan, fly"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (defaults: reference scenario)");

    // train
    auto* train = app.add_subcommand("train", "Train agents over multiple seeds");
    std::string train_out;
    int train_seeds = 0;
    long long train_steps = 0;
    long long train_base_seed = -1;
    train->add_option("--out", train_out, "Output directory")->required();
    train->add_option("--seeds", train_seeds, "Number of seeds (default from config: 14)");
    train->add_option("--steps", train_steps, "Training steps per seed (default: 500000)");
    train->add_option("--base-seed", train_base_seed, "First seed value (default: 0)");

    // plan
    auto* plan = app.add_subcommand("plan", "Deterministic trajectory in the clean dynamics");
    std::string plan_ckpt, plan_out;
    std::uint64_t plan_seed = 0;
    bool plan_has_seed = false;
    plan->add_option("--checkpoint", plan_ckpt, "Policy checkpoint")->required();
    plan->add_option("--out", plan_out, "Output CSV")->required();
    plan->add_option("--seed", plan_seed,
                     "Seed for the initial mean anomaly (default: replay the "
                     "checkpoint's recorded evaluation episode)")
        ->each([&](const std::string&) { plan_has_seed = true; });

    // fly
    auto* fly = app.add_subcommand("fly", "Closed-loop trajectory in the perturbed dynamics");
    std::string fly_ckpt, fly_out;
    std::uint64_t fly_noise_seed = 0;
    std::uint64_t fly_seed = 0;
    bool fly_has_seed = false;
    fly->add_option("--checkpoint", fly_ckpt, "Policy checkpoint")->required();
    fly->add_option("--out", fly_out, "Output CSV")->required();
    fly->add_option("--noise-seed", fly_noise_seed, "Thruster-error stream seed (default 0)");
    fly->add_option("--seed", fly_seed,
                    "Seed for the initial mean anomaly (default: replay the "
                    "checkpoint's recorded evaluation episode)")
        ->each([&](const std::string&) { fly_has_seed = true; });

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "Extract one series from a trajectory CSV");
    std::string plot_in, plot_what, plot_out;
    plot->add_option("--in", plot_in, "Trajectory CSV")->required();
    plot->add_option("--what", plot_what, "Series: ra, rp, mass, actions")->required();
    plot->add_option("--out", plot_out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : PR_ERR_USAGE;
    }

    int status = PR_OK;
    const std::optional<std::string> config = read_config(config_path, status);
    if (status != PR_OK) return status;
    const char* config_cstr = config ? config->c_str() : nullptr;

    if (train->parsed()) {
        pr_train_summary summary{};
        status = pr_train(config_cstr, train_out.c_str(), train_seeds, train_steps,
                          train_base_seed, &summary);
        if (status == PR_OK || status == PR_ERR_PARTIAL) {
            std::cout << "seeds: " << summary.n_seeds << "  failed: " << summary.n_failed
                      << "  best eval reward: " << summary.best_eval_reward << "\n";
        }
        return report(status, "train");
    }
    if (plan->parsed()) {
        double reward = 0.0;
        status = pr_plan(config_cstr, plan_ckpt.c_str(), plan_out.c_str(),
                         plan_has_seed ? &plan_seed : nullptr, &reward);
        if (status == PR_OK) std::cout << "plan reward: " << reward << "\n";
        return report(status, "plan");
    }
    if (fly->parsed()) {
        double reward = 0.0;
        status = pr_fly(config_cstr, fly_ckpt.c_str(), fly_out.c_str(), fly_noise_seed,
                        fly_has_seed ? &fly_seed : nullptr, &reward);
        if (status == PR_OK) std::cout << "fly reward: " << reward << "\n";
        return report(status, "fly");
    }
    if (plot->parsed()) {
        status = pr_plot_data(plot_in.c_str(), plot_what.c_str(), plot_out.c_str());
        return report(status, "plot-data");
    }
    return PR_ERR_USAGE;
}
