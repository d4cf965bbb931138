/* periraise: reinforcement-learned pericenter-raising guidance for a
 * low-thrust MEO satellite.
 *
 * The shared library wraps the full pipeline behind a C surface: an episodic
 * environment (reset/step), policy checkpoints, multi-seed training, and
 * trajectory generation in clean or perturbed dynamics. All functions return
 * a status code from the enum below; pr_last_error() carries the message of
 * the last failure on the calling thread.
 */
#ifndef PERIRAISE_H
#define PERIRAISE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pr_env pr_env;
typedef struct pr_policy pr_policy;

/* Status codes. The CLI reuses them as exit codes. */
enum {
    PR_OK = 0,
    PR_ERR_USAGE = 1,   /* bad arguments, config keys, file formats */
    PR_ERR_RUNTIME = 2, /* propagation, training or I/O failure */
    PR_ERR_PARTIAL = 3  /* training: some seeds failed, others finished */
};

const char* pr_version(void);
const char* pr_last_error(void);

/* --- Environment ---------------------------------------------------------
 * Episodic API: reset(seed) -> observation; step(action) -> (observation,
 * reward, done). Observations are 8 doubles in [-1, 1] (time, position,
 * velocity, mass), actions are 3 normalized thrust commands in [-1, 1].
 * config_json may be NULL for the default scenario. use_eval_profile
 * selects the perturbed dynamics (16x16 field, Sun/Moon, SRP, thruster
 * noise) instead of the clean training dynamics.
 */
int pr_env_create(const char* config_json, int use_eval_profile, pr_env** out_env);
void pr_env_destroy(pr_env* env);

int pr_env_observation_dim(const pr_env* env);
int pr_env_action_dim(const pr_env* env);

/* Draws the initial mean anomaly from the seed; obs_out receives 8 values. */
int pr_env_reset(pr_env* env, uint64_t seed, double* obs_out);

/* Reward is 0 until the final step of the episode; done_out flips to 1 there.
 * Stepping a finished episode fails with PR_ERR_USAGE. */
int pr_env_step(pr_env* env, const double* action, double* obs_out, double* reward_out,
                int* done_out);

/* Osculating apocenter/pericenter radii (km) and mass (kg) of the current
 * state. */
int pr_env_info(const pr_env* env, double* ra_km, double* rp_km, double* mass_kg);

/* Raw state: seconds since scenario start, GCRF position (km), velocity
 * (km/s), mass (kg). Any output pointer may be NULL. */
int pr_env_state(const pr_env* env, double* t_s, double* position_km, double* velocity_kms,
                 double* mass_kg);

/* --- Policies ------------------------------------------------------------ */
int pr_policy_load(const char* checkpoint_path, pr_policy** out_policy);
void pr_policy_destroy(pr_policy* policy);

/* Deterministic action: network mean, clamped to [-1, 1]. */
int pr_policy_mean_action(const pr_policy* policy, const double* obs, double* action_out);

/* --- Training ------------------------------------------------------------
 * Trains n_seeds agents in the training dynamics and writes, per seed,
 * <out_dir>/<seed>/{checkpoint_best, checkpoint_final, eval.jsonl,
 * train.jsonl} plus <out_dir>/manifest.json with the resolved configuration.
 * n_seeds/total_steps <= 0 and base_seed < 0 fall back to config values.
 * Returns PR_ERR_PARTIAL when some (not all) seeds diverged.
 */
typedef struct pr_train_summary {
    int n_seeds;
    int n_failed;
    double best_eval_reward;
} pr_train_summary;

int pr_train(const char* config_json, const char* out_dir, int n_seeds, long long total_steps,
             long long base_seed, pr_train_summary* summary_out);

/* --- Trajectories ----------------------------------------------------------
 * Deterministic episode under the checkpoint's policy, written as CSV:
 * step,t_s,x_km,y_km,z_km,vx_kms,vy_kms,vz_kms,mass_kg,ra_km,rp_km,
 * ax_cmd,ay_cmd,az_cmd (initial row + one per step).
 *
 * anomaly_seed: pointer to a seed that draws the initial mean anomaly, or
 * NULL to replay the episode recorded in the checkpoint metadata (so the
 * stored evaluation reward reproduces). pr_plan runs the clean training
 * dynamics; pr_fly runs the perturbed evaluation dynamics with noise_seed
 * feeding the thruster-error stream. reward_out may be NULL.
 */
int pr_plan(const char* config_json, const char* checkpoint_path, const char* out_csv,
            const uint64_t* anomaly_seed, double* reward_out);
int pr_fly(const char* config_json, const char* checkpoint_path, const char* out_csv,
           uint64_t noise_seed, const uint64_t* anomaly_seed, double* reward_out);

/* Extracts one plot series from a trajectory CSV. what: "ra", "rp", "mass"
 * (two columns, t_min + value) or "actions" (four columns). */
int pr_plot_data(const char* in_csv, const char* what, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* PERIRAISE_H */
