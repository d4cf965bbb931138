#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "gravity_data.hpp"

namespace periraise::config {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& section,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ParseError("config: '" + section + "' must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key))
            throw ParseError("config: unknown key '" + section + "." + key + "'");
    }
}

template <typename T>
void get_to(const json& j, const char* key, T& out) {
    if (j.contains(key)) j.at(key).get_to(out);
}

void parse_profile(const json& j, const std::string& section, forces::DynamicsProfile& p) {
    check_keys(j, section,
               {"harmonics_degree", "harmonics_order", "sun", "moon", "srp",
                "thruster_noise_stddev"});
    get_to(j, "harmonics_degree", p.harmonics_degree);
    get_to(j, "harmonics_order", p.harmonics_order);
    get_to(j, "sun", p.third_body_sun);
    get_to(j, "moon", p.third_body_moon);
    get_to(j, "srp", p.srp);
    get_to(j, "thruster_noise_stddev", p.thruster_noise_stddev);
    if (p.harmonics_degree < p.harmonics_order || p.harmonics_order < 0)
        throw ParseError("config: " + section + ": need harmonics degree >= order >= 0");
    if (p.thruster_noise_stddev < 0.0)
        throw ParseError("config: " + section + ": thruster_noise_stddev must be >= 0");
}

json profile_to_json(const forces::DynamicsProfile& p) {
    return {{"harmonics_degree", p.harmonics_degree},
            {"harmonics_order", p.harmonics_order},
            {"sun", p.third_body_sun},
            {"moon", p.third_body_moon},
            {"srp", p.srp},
            {"thruster_noise_stddev", p.thruster_noise_stddev}};
}

}  // namespace

ProjectConfig default_config() {
    ProjectConfig c;
    c.eval_profile.harmonics_degree = 16;
    c.eval_profile.harmonics_order = 16;
    c.eval_profile.third_body_sun = true;
    c.eval_profile.third_body_moon = true;
    c.eval_profile.srp = true;
    c.eval_profile.thruster_noise_stddev = 0.10;
    return c;
}

ProjectConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }

    ProjectConfig c = default_config();
    check_keys(j, "",
               {"scenario", "satellite", "dynamics_train", "dynamics_eval", "integrator", "agent",
                "training", "gravity_file"});

    if (j.contains("scenario")) {
        const json& s = j["scenario"];
        check_keys(s, "scenario",
                   {"dt_s", "n_steps", "w_rp_per_km", "w_ra_per_km", "w_m_per_kg", "ra0_km",
                    "rp0_km", "i0_rad", "raan0_rad", "argp0_rad", "m0_kg", "d_char_km",
                    "v_char_kms"});
        get_to(s, "dt_s", c.episode.dt);
        get_to(s, "n_steps", c.episode.n_steps);
        get_to(s, "w_rp_per_km", c.episode.w_rp);
        get_to(s, "w_ra_per_km", c.episode.w_ra);
        get_to(s, "w_m_per_kg", c.episode.w_m);
        get_to(s, "ra0_km", c.episode.ra0);
        get_to(s, "rp0_km", c.episode.rp0);
        get_to(s, "i0_rad", c.episode.i0);
        get_to(s, "raan0_rad", c.episode.raan0);
        get_to(s, "argp0_rad", c.episode.argp0);
        get_to(s, "m0_kg", c.episode.m0);
        get_to(s, "d_char_km", c.episode.d_char);
        get_to(s, "v_char_kms", c.episode.v_char);
        if (!(c.episode.dt > 0.0) || c.episode.n_steps <= 0)
            throw ParseError("config: scenario: dt_s and n_steps must be positive");
        if (!(c.episode.rp0 > 0.0) || c.episode.ra0 < c.episode.rp0)
            throw ParseError("config: scenario: need ra0_km >= rp0_km > 0");
    }
    if (j.contains("satellite")) {
        const json& s = j["satellite"];
        check_keys(s, "satellite", {"f_max_mn", "isp_s", "area_m2", "reflection_coeff"});
        forces::SatelliteParams& p = c.episode.dynamics.satellite;
        get_to(s, "f_max_mn", p.f_max_mn);
        get_to(s, "isp_s", p.isp_s);
        get_to(s, "area_m2", p.area_m2);
        get_to(s, "reflection_coeff", p.reflection_coeff);
        if (!(p.f_max_mn > 0.0) || !(p.isp_s > 0.0) || !(p.area_m2 > 0.0))
            throw ParseError("config: satellite: parameters must be positive");
        if (p.reflection_coeff < 1.0 || p.reflection_coeff > 2.0)
            throw ParseError("config: satellite: reflection_coeff must be in [1, 2]");
    }
    if (j.contains("dynamics_train"))
        parse_profile(j["dynamics_train"], "dynamics_train", c.episode.dynamics.profile);
    if (j.contains("dynamics_eval"))
        parse_profile(j["dynamics_eval"], "dynamics_eval", c.eval_profile);
    if (j.contains("integrator")) {
        const json& s = j["integrator"];
        check_keys(s, "integrator",
                   {"min_step_s", "max_step_s", "initial_step_s", "abs_tol_pos_km",
                    "abs_tol_vel_kms", "abs_tol_mass_kg", "rel_tol"});
        propagate::IntegratorConfig& p = c.episode.integrator;
        get_to(s, "min_step_s", p.min_step);
        get_to(s, "max_step_s", p.max_step);
        get_to(s, "initial_step_s", p.initial_step);
        get_to(s, "abs_tol_pos_km", p.abs_tol_position);
        get_to(s, "abs_tol_vel_kms", p.abs_tol_velocity);
        get_to(s, "abs_tol_mass_kg", p.abs_tol_mass);
        get_to(s, "rel_tol", p.rel_tol);
        if (!(p.min_step > 0.0) || p.max_step < p.min_step)
            throw ParseError("config: integrator: need max_step_s >= min_step_s > 0");
    }
    if (j.contains("agent")) {
        const json& s = j["agent"];
        check_keys(s, "agent",
                   {"hidden", "learning_rate", "gamma", "n_rollout", "value_loss_weight",
                    "entropy_weight", "grad_clip_norm"});
        get_to(s, "hidden", c.agent.hidden);
        get_to(s, "learning_rate", c.agent.adam.lr);
        get_to(s, "gamma", c.agent.gamma);
        get_to(s, "n_rollout", c.agent.n_rollout);
        get_to(s, "value_loss_weight", c.agent.value_loss_weight);
        get_to(s, "entropy_weight", c.agent.entropy_weight);
        get_to(s, "grad_clip_norm", c.agent.grad_clip_norm);
        if (c.agent.gamma <= 0.0 || c.agent.gamma > 1.0)
            throw ParseError("config: agent: gamma must be in (0, 1]");
        if (c.agent.n_rollout < 1) throw ParseError("config: agent: n_rollout must be >= 1");
    }
    if (j.contains("training")) {
        const json& s = j["training"];
        check_keys(s, "training",
                   {"n_seeds", "total_steps", "eval_every_episodes", "base_seed", "max_parallel",
                    "train_log_every_updates"});
        get_to(s, "n_seeds", c.n_seeds);
        get_to(s, "total_steps", c.total_steps);
        get_to(s, "eval_every_episodes", c.eval_every_episodes);
        get_to(s, "base_seed", c.base_seed);
        get_to(s, "max_parallel", c.max_parallel);
        get_to(s, "train_log_every_updates", c.train_log_every_updates);
        if (c.n_seeds <= 0 || c.total_steps <= 0 || c.eval_every_episodes <= 0)
            throw ParseError("config: training: counts must be positive");
    }
    get_to(j, "gravity_file", c.gravity_file);
    return c;
}

ProjectConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_json(const ProjectConfig& c) {
    json j;
    j["scenario"] = {{"dt_s", c.episode.dt},
                     {"n_steps", c.episode.n_steps},
                     {"w_rp_per_km", c.episode.w_rp},
                     {"w_ra_per_km", c.episode.w_ra},
                     {"w_m_per_kg", c.episode.w_m},
                     {"ra0_km", c.episode.ra0},
                     {"rp0_km", c.episode.rp0},
                     {"i0_rad", c.episode.i0},
                     {"raan0_rad", c.episode.raan0},
                     {"argp0_rad", c.episode.argp0},
                     {"m0_kg", c.episode.m0},
                     {"d_char_km", c.episode.d_char},
                     {"v_char_kms", c.episode.v_char}};
    const forces::SatelliteParams& p = c.episode.dynamics.satellite;
    j["satellite"] = {{"f_max_mn", p.f_max_mn},
                      {"isp_s", p.isp_s},
                      {"area_m2", p.area_m2},
                      {"reflection_coeff", p.reflection_coeff}};
    j["dynamics_train"] = profile_to_json(c.episode.dynamics.profile);
    j["dynamics_eval"] = profile_to_json(c.eval_profile);
    const propagate::IntegratorConfig& ic = c.episode.integrator;
    j["integrator"] = {{"min_step_s", ic.min_step},
                       {"max_step_s", ic.max_step},
                       {"initial_step_s", ic.initial_step},
                       {"abs_tol_pos_km", ic.abs_tol_position},
                       {"abs_tol_vel_kms", ic.abs_tol_velocity},
                       {"abs_tol_mass_kg", ic.abs_tol_mass},
                       {"rel_tol", ic.rel_tol}};
    j["agent"] = {{"hidden", c.agent.hidden},
                  {"learning_rate", c.agent.adam.lr},
                  {"gamma", c.agent.gamma},
                  {"n_rollout", c.agent.n_rollout},
                  {"value_loss_weight", c.agent.value_loss_weight},
                  {"entropy_weight", c.agent.entropy_weight},
                  {"grad_clip_norm", c.agent.grad_clip_norm}};
    j["training"] = {{"n_seeds", c.n_seeds},
                     {"total_steps", c.total_steps},
                     {"eval_every_episodes", c.eval_every_episodes},
                     {"base_seed", c.base_seed},
                     {"max_parallel", c.max_parallel},
                     {"train_log_every_updates", c.train_log_every_updates}};
    j["gravity_file"] = c.gravity_file;
    return j.dump(1);
}

env::EpisodeConfig make_train_episode(const ProjectConfig& config) {
    env::EpisodeConfig episode = config.episode;
    episode.dynamics.gravity.reset();
    if (episode.dynamics.profile.harmonics_degree > 0) {
        // trainable against a perturbed field too, when configured that way
        episode.dynamics.gravity = std::make_shared<gravity::GravityCoefficients>(
            [&] {
                if (config.gravity_file.empty())
                    return gravity::parse_gravity_coefficients(gravity::kDefaultFieldText);
                std::ifstream in(config.gravity_file);
                if (!in) throw ParseError("config: cannot open gravity file: " + config.gravity_file);
                std::stringstream buffer;
                buffer << in.rdbuf();
                return gravity::parse_gravity_coefficients(buffer.str());
            }());
    }
    return episode;
}

env::EpisodeConfig make_eval_episode(const ProjectConfig& config) {
    ProjectConfig shuffled = config;
    shuffled.episode.dynamics.profile = config.eval_profile;
    return make_train_episode(shuffled);
}

harness::RunConfig make_run_config(const ProjectConfig& config, const std::string& out_dir) {
    harness::RunConfig run;
    run.n_seeds = config.n_seeds;
    run.base_seed = config.base_seed;
    run.total_steps = config.total_steps;
    run.eval_every_episodes = config.eval_every_episodes;
    run.out_dir = out_dir;
    run.episode = make_train_episode(config);
    run.agent = config.agent;
    run.max_parallel = config.max_parallel;
    run.train_log_every_updates = config.train_log_every_updates;
    run.resolved_config_json = to_json(config);
    return run;
}

}  // namespace periraise::config
