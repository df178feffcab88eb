#include "dicke/report_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace dicke {

namespace {

// JSON has no NaN or infinity; non-finite values become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void to_json(Json& j, const Couplings& c) { j = Json{{"Jx", c.x}, {"Jy", c.y}, {"Jz", c.z}}; }

void to_json(Json& j, const ModelSpec& s) {
    j = Json{{"N", s.N},
             {"omega", s.omega},
             {"epsilon", s.epsilon},
             {"g", s.g},
             {"J", s.J},
             {"boundary", to_string(s.boundary)},
             {"staggered_field", s.staggered_field}};
}

void to_json(Json& j, const PhotonFrame& f) {
    j = Json{{"delta_x", f.delta_x}, {"delta_p", f.delta_p}, {"r", f.r}, {"lambda", f.lambda}};
}

void to_json(Json& j, const ScfConfig& c) {
    j = Json{{"max_outer", c.max_outer},
             {"tol_E", c.tol_E},
             {"tol_O", c.tol_O},
             {"initial_step", c.initial_step},
             {"shrink", c.shrink},
             {"grow", c.grow},
             {"frame_steps", c.frame_steps},
             {"gradient", to_string(c.gradient)},
             {"fd_step", c.fd_step},
             {"normal_seed_kick", c.normal_seed_kick},
             {"superradiant_seed_lambda", c.superradiant_seed_lambda}};
}

void to_json(Json& j, const SolverConfig& c) {
    j = Json{{"backend", to_string(c.backend)},
             {"max_lanczos_iterations", c.max_lanczos_iterations},
             {"krylov_dim", c.krylov_dim},
             {"krylov_tol", c.krylov_tol},
             {"bond_dim", c.bond_dim},
             {"sweeps", c.sweeps},
             {"dmrg_tol", c.dmrg_tol},
             {"degeneracy_field", c.degeneracy_field},
             {"warm_noise", c.warm_noise},
             {"seed", c.seed}};
}

void to_json(Json& j, const ScfIterate& it) {
    j = Json{{"energy", it.energy},
             {"inner_energy", it.inner_energy},
             {"frame", it.frame},
             {"n_mean", it.n_mean},
             {"Mz", it.Mz},
             {"inner_iterations", it.inner_iterations}};
}

void to_json(Json& j, const ScfReport& r) {
    j = Json{{"branch", r.branch},
             {"converged", r.converged},
             {"iterations", r.iterations},
             {"message", r.message},
             {"energy", r.energy},
             {"E0", r.E0},
             {"n_mean", r.n_mean},
             {"Mz", r.Mz},
             {"lab_x", r.lab_x},
             {"mirrored", r.mirrored},
             {"frame", r.frame},
             {"spec", r.spec},
             {"scf", r.scf},
             {"solver", r.solver},
             {"history", r.history}};
}

void to_json(Json& j, const ObservableSet& o) {
    j = Json{{"N", o.N},
             {"energy", o.energy},
             {"E0", o.E0},
             {"n_mean", o.n_mean},
             {"Mz", o.Mz},
             {"abs_Mz", o.abs_Mz},
             {"Mx", o.Mx},
             {"bulk_site", o.bulk_site},
             {"zz_bulk", o.zz_bulk},
             {"stag_bulk", o.stag_bulk},
             {"stag_bulk_opposite", o.stag_bulk_opposite},
             {"zz", o.zz},
             {"stag", o.stag},
             {"xx", o.xx}};
}

void to_json(Json& j, const ScalingFit& f) {
    j = Json{{"alpha", number(f.alpha)}, {"intercept", number(f.intercept)},
             {"rss", number(f.rss)},     {"r2", number(f.r2)},
             {"points", f.points},       {"degenerate", f.degenerate},
             {"regime", f.regime}};
}

void to_json(Json& j, const DecayFit& f) {
    j = Json{{"class", to_string(f.kind)},
             {"low_confidence", f.low_confidence},
             {"exp_rate", number(f.exp_rate)},
             {"exp_rss", number(f.exp_rss)},
             {"pow_exponent", number(f.pow_exponent)},
             {"pow_rss", number(f.pow_rss)},
             {"tail", number(f.tail)},
             {"ratio", number(f.ratio)}};
}

void to_json(Json& j, const PhaseLabel& p) {
    Json d = Json::object();
    for (const auto& [k, v] : p.distance) d[k] = number(v);
    j = Json{{"label", p.label}, {"distance", d}, {"xx", p.xx}};
}

void to_json(Json& j, const OracleResult& r) {
    j = Json{{"spec", r.spec},     {"n_max", r.n_max},           {"energy", r.energy},
             {"margin", r.margin}, {"iterations", r.iterations}, {"dimension", r.state.size()},
             {"ordering", "photon-major"}};
}

void to_json(Json& j, const OracleObservables& o) {
    j = Json{{"N", o.N},   {"n_mean", o.n_mean}, {"Mz", o.Mz},
             {"Mx", o.Mx}, {"XX", o.XX},         {"sz", o.sz},
             {"sx", o.sx}, {"bulk_site", o.bulk_site}, {"zz", o.zz},
             {"xx", o.xx}};
}

void write_json(const std::string& path, const Json& j) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string version_string() { return "dicke 1.0.0"; }

}  // namespace dicke
