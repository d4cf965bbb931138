#include "trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace periraise::trajectory {

namespace {

constexpr char kHeader[] =
    "step,t_s,x_km,y_km,z_km,vx_kms,vy_kms,vz_kms,mass_kg,ra_km,rp_km,ax_cmd,ay_cmd,az_cmd";

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);  // round-trips exactly
    return buf;
}

}  // namespace

void write_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw Error("trajectory: cannot open for writing: " + path);
    out << kHeader << "\n";
    for (const Point& p : traj.points) {
        out << p.step << ',' << format_double(p.t_s) << ',' << format_double(p.position.x) << ','
            << format_double(p.position.y) << ',' << format_double(p.position.z) << ','
            << format_double(p.velocity.x) << ',' << format_double(p.velocity.y) << ','
            << format_double(p.velocity.z) << ',' << format_double(p.mass_kg) << ','
            << format_double(p.ra_km) << ',' << format_double(p.rp_km) << ','
            << format_double(p.action.x) << ',' << format_double(p.action.y) << ','
            << format_double(p.action.z) << "\n";
    }
    if (!out) throw Error("trajectory: write failed: " + path);
}

Trajectory read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("trajectory: cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("trajectory: empty file: " + path);
    if (line != kHeader) throw ParseError("trajectory: unexpected header in " + path);

    Trajectory traj;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        Point p;
        char comma;
        fields >> p.step >> comma >> p.t_s >> comma >> p.position.x >> comma >> p.position.y >>
            comma >> p.position.z >> comma >> p.velocity.x >> comma >> p.velocity.y >> comma >>
            p.velocity.z >> comma >> p.mass_kg >> comma >> p.ra_km >> comma >> p.rp_km >> comma >>
            p.action.x >> comma >> p.action.y >> comma >> p.action.z;
        if (fields.fail())
            throw ParseError("trajectory: malformed line " + std::to_string(line_no) + " in " +
                             path);
        traj.points.push_back(p);
    }
    return traj;
}

}  // namespace periraise::trajectory
