#pragma once

#include <string>
#include <vector>

#include "vec3.hpp"

namespace periraise::trajectory {

struct Point {
    int step = 0;
    double t_s = 0.0;
    Vec3 position;  // km
    Vec3 velocity;  // km/s
    double mass_kg = 0.0;
    double ra_km = 0.0;  // osculating apocenter radius
    double rp_km = 0.0;  // osculating pericenter radius
    Vec3 action;         // command chosen at this state (zeros on the final row)
};

struct Trajectory {
    std::vector<Point> points;  // n_steps + 1 rows, initial state first
    double reward = 0.0;
    double initial_mean_anomaly = 0.0;
};

// CSV columns:
// step,t_s,x_km,y_km,z_km,vx_kms,vy_kms,vz_kms,mass_kg,ra_km,rp_km,ax_cmd,ay_cmd,az_cmd
void write_csv(const std::string& path, const Trajectory& traj);
Trajectory read_csv(const std::string& path);

}  // namespace periraise::trajectory
