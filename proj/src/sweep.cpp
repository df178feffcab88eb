#include "dicke/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

#include <omp.h>

#include "dicke/report_io.hpp"

namespace dicke {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Run f(0..n-1) on `width` threads; each worker uses one OpenMP thread.
template <class F>
void parallel_for(std::size_t n, int width, F&& f) {
    if (width <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(width), n);
    for (std::size_t t = 0; t < w; ++t) {
        pool.emplace_back([&] {
            omp_set_num_threads(1);
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::string fmt(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
    out << text;
}

/// Grid of axis coordinates, axes[0] fastest.
std::vector<std::vector<double>> grid(const std::vector<AxisDef>& axes) {
    std::vector<std::vector<double>> pts{{}};
    for (const auto& ax : axes) {
        const auto vals = ax.values();
        std::vector<std::vector<double>> next;
        for (double v : vals)
            for (const auto& p : pts) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        pts = std::move(next);
    }
    // Reorder so axes[0] varies fastest.
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        for (std::size_t k = a.size(); k-- > 0;)
            if (a[k] != b[k]) return a[k] < b[k];
        return false;
    });
    return pts;
}

Json plan_json(const SweepPlan& plan) {
    Json axes = Json::array();
    for (const auto& a : plan.axes)
        axes.push_back(Json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"step", a.step}});
    const PhaseThresholds& th = plan.thresholds;
    return Json{{"preset", to_string(plan.base.kind)},
                {"base",
                 Json{{"N", plan.base.N},
                      {"g", plan.base.g},
                      {"J", plan.base.J},
                      {"Jz", plan.base.Jz},
                      {"omega", plan.base.omega},
                      {"epsilon", plan.base.epsilon},
                      {"boundary", to_string(plan.base.boundary)}}},
                {"axes", axes},
                {"N_list", plan.N_list},
                {"branches", to_string(plan.branches)},
                {"scf", plan.scf},
                {"solver", plan.solver},
                {"thresholds",
                 Json{{"superradiant_n", th.superradiant_n},
                      {"order_tol", th.order_tol},
                      {"sublinear_lo", th.sublinear_lo},
                      {"sublinear_hi", th.sublinear_hi},
                      {"plateau_floor", th.decay.plateau_floor},
                      {"plateau_ratio", th.decay.plateau_ratio},
                      {"jump_threshold", plan.jump_threshold}}}};
}

Json point_json(const PointResult& p) {
    Json j{{"index", p.index},
           {"coords", p.coords},
           {"status", p.status},
           {"two_branch", p.two_branch},
           {"branch", p.report.branch},
           {"E0", p.report.E0},
           {"iterations", p.report.iterations},
           {"frame", p.report.frame},
           {"phase", p.phase}};
    if (p.other) j["other"] = Json{{"branch", p.other->branch}, {"E0", p.other->E0},
                                  {"converged", p.other->converged}};
    if (p.alpha) j["alpha"] = *p.alpha;
    return j;
}

/// Follow the branch of `from` along axes[0] to each of `targets` by warm-started solves.
std::vector<std::optional<ScfReport>> continue_branch(const SweepPlan& plan,
                                                      const std::vector<double>& coords,
                                                      const ScfReport& from,
                                                      const std::vector<double>& targets) {
    std::vector<std::optional<ScfReport>> out;
    PhotonFrame frame = from.frame;
    SpinState state = from.state;
    for (double x : targets) {
        auto c = coords;
        c[0] = x;
        try {
            ScfReport r = solve_from(spec_at(plan.base, plan.axes, c), frame, state, from.branch,
                                     plan.scf, plan.solver);
            frame = r.frame;
            state = r.state;
            out.push_back(r.converged ? std::optional<ScfReport>(std::move(r)) : std::nullopt);
        } catch (const std::exception&) {
            out.push_back(std::nullopt);
        }
    }
    return out;
}

/// Energy crossing inside a first-order bracket [a, b]: the state at a is
/// continued upwards and the state at b downwards on a refined grid. A
/// second-seed report at an end point counts when it lies on the other side
/// of the jump.
std::optional<double> refine_crossing(const SweepPlan& plan, const PointResult& a,
                                      const PointResult& b, int substeps) {
    const double xa = a.coords[0], xb = b.coords[0];
    const double half_jump = 0.5 * std::abs(b.report.n_mean - a.report.n_mean);
    std::vector<double> up;
    for (int k = 1; k < substeps; ++k) up.push_back(xa + (xb - xa) * k / substeps);
    const std::vector<double> down(up.rbegin(), up.rend());
    const auto lower = continue_branch(plan, a.coords, a.report, up);
    auto upper = continue_branch(plan, b.coords, b.report, down);
    std::reverse(upper.begin(), upper.end());

    std::vector<double> xs{xa}, e_lo{a.report.energy}, e_hi{kNaN};
    if (a.other && a.other->converged && a.other->n_mean > a.report.n_mean + half_jump)
        e_hi[0] = a.other->energy;
    for (std::size_t k = 0; k < up.size(); ++k) {
        xs.push_back(up[k]);
        e_lo.push_back(lower[k] ? lower[k]->energy : kNaN);
        e_hi.push_back(upper[k] ? upper[k]->energy : kNaN);
    }
    xs.push_back(xb);
    e_lo.push_back(kNaN);
    e_hi.push_back(b.report.energy);
    if (b.other && b.other->converged && b.other->n_mean < b.report.n_mean - half_jump)
        e_lo.back() = b.other->energy;
    return branch_energy_crossing(xs, e_lo, e_hi);
}

}  // namespace

std::vector<double> AxisDef::values() const {
    std::vector<double> v;
    const long n = std::lround(std::floor((max - min) / step + 1e-9));
    for (long k = 0; k <= n; ++k) v.push_back(min + k * step);
    return v;
}

std::string to_string(BranchMode m) {
    switch (m) {
        case BranchMode::automatic: return "auto";
        case BranchMode::always: return "always";
        case BranchMode::never: return "never";
    }
    return "auto";
}

BranchMode branch_mode_from_string(const std::string& s) {
    if (s == "auto") return BranchMode::automatic;
    if (s == "always") return BranchMode::always;
    if (s == "never") return BranchMode::never;
    throw ConfigError("unknown branch mode '" + s + "' (expected auto|always|never)");
}

void SweepPlan::validate() const {
    if (axes.empty() && N_list.empty()) throw ConfigError("sweep plan has no axis and no N list");
    if (axes.size() > 2) throw ConfigError("at most two sweep axes are supported");
    for (const auto& a : axes) {
        if (!(a.step > 0.0)) throw ConfigError("axis '" + a.name + "' needs a positive step");
        if (a.max < a.min) throw ConfigError("axis '" + a.name + "' has max < min");
    }
    if (axes.size() == 2 && axes[0].name == axes[1].name)
        throw ConfigError("the two sweep axes must differ");
    for (int N : N_list)
        if (N < 2) throw ConfigError("N values must be >= 2");
    if (!(jump_threshold > 0.0)) throw ConfigError("jump threshold must be positive");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    scf.validate();
    solver.validate();
    // Every grid point must map to a valid model.
    spec_at(base, axes, std::vector<double>(axes.size(), 0.0)).validate();
}

int SweepPlan::resolved_workers() const {
    if (workers > 0) return workers;
    if (const char* env = std::getenv("DICKE_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 1;
}

ModelSpec spec_at(const ModelPreset& base, const std::vector<AxisDef>& axes,
                  const std::vector<double>& coords, std::optional<int> N) {
    if (coords.size() != axes.size()) throw ConfigError("coordinate count does not match the axes");
    ModelPreset p = base;
    if (N) p.N = *N;
    std::optional<double> jx, jy, jz;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const std::string& name = axes[k].name;
        const double v = coords[k];
        if (name == "g")
            p.g = v;
        else if (name == "J")
            p.J = v;
        else if (name == "Jz") {
            if (p.kind == PresetKind::dicke_xxz)
                p.Jz = v;
            else
                jz = v;
        } else if (name == "Jx")
            jx = v;
        else if (name == "Jy")
            jy = v;
        else if (name == "omega")
            p.omega = v;
        else if (name == "epsilon")
            p.epsilon = v;
        else
            throw ConfigError("unknown sweep axis '" + name + "'");
    }
    ModelSpec s = p.to_spec();
    if (jx) s.J.x = *jx;
    if (jy) s.J.y = *jy;
    if (jz) s.J.z = *jz;
    s.validate();
    return s;
}

bool wants_two_branch(const SweepPlan& plan, const ModelSpec& spec) {
    switch (plan.branches) {
        case BranchMode::always: return true;
        case BranchMode::never: return false;
        case BranchMode::automatic: return spec.g > 0.0 && spec.J.z < 4.0 * ising_critical_exchange(spec);
    }
    return false;
}

PointResult run_point(const ModelSpec& spec, bool two_branch, const ScfConfig& scf,
                      const SolverConfig& solver, const PhaseThresholds& th) {
    PointResult p;
    p.spec = spec;
    p.two_branch = two_branch;
    try {
        if (two_branch) {
            TwoBranchResult r = solve_two_branch(spec, scf, solver);
            const bool normal = r.selected == SeedKind::normal;
            p.report = normal ? std::move(r.normal) : std::move(r.superradiant);
            p.other = normal ? std::move(r.superradiant) : std::move(r.normal);
        } else {
            p.report = solve(spec, SeedKind::normal, scf, solver);
        }
        p.obs = lab_frame_observables(p.report.spec, p.report.frame, p.report.state);
        p.phase = classify_phase(p.obs, std::nullopt, th);
        if (!p.report.converged) p.status = "not-converged";
    } catch (const std::exception& e) {
        p.status = std::string("error: ") + e.what();
    }
    return p;
}

std::optional<BoundaryPoint> locate_onset(const std::vector<double>& x,
                                          const std::vector<double>& n_mean,
                                          const std::vector<double>& Mz, double threshold,
                                          double jump_threshold) {
    const std::size_t n = x.size();
    if (n < 2 || n_mean.size() != n || Mz.size() != n)
        throw std::invalid_argument("locate_onset: inconsistent line data");
    std::size_t k = n;
    for (std::size_t q = 0; q + 1 < n; ++q)
        if (n_mean[q] <= threshold && n_mean[q + 1] > threshold) {
            k = q;
            break;
        }
    if (k == n) return std::nullopt;

    // Largest adjacent change within one grid step of the crossing. Jumps deep
    // inside the superradiant phase do not tag the boundary.
    BoundaryPoint b;
    std::size_t jk = k;
    for (std::size_t q = k > 0 ? k - 1 : 0; q <= k + 1 && q + 1 < n; ++q) {
        const double d = std::max(std::abs(n_mean[q + 1] - n_mean[q]), std::abs(Mz[q + 1] - Mz[q]));
        if (d > b.jump) {
            b.jump = d;
            jk = q;
        }
    }
    if (b.jump > jump_threshold) {
        b.order = "first";
        b.at = 0.5 * (x[jk] + x[jk + 1]);
        b.bracket = jk;
    } else {
        b.order = "second";
        const double t = (threshold - n_mean[k]) / (n_mean[k + 1] - n_mean[k]);
        b.at = x[k] + t * (x[k + 1] - x[k]);
        b.bracket = k;
    }
    return b;
}

std::optional<double> branch_energy_crossing(const std::vector<double>& x,
                                             const std::vector<double>& E_normal,
                                             const std::vector<double>& E_superradiant) {
    // Differences below the tie tolerance mean both seeds found the same state.
    std::optional<std::pair<double, double>> last;  // (x, d) of the last distinct pair
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = E_superradiant[k] - E_normal[k];
        if (!std::isfinite(d)) continue;
        const double tie = 1e-9 * std::max(1.0, std::abs(E_normal[k]));
        if (std::abs(d) <= tie) continue;
        if (last && (last->second > 0.0) != (d > 0.0)) {
            const double t = last->second / (last->second - d);
            return last->first + t * (x[k] - last->first);
        }
        last = {x[k], d};
    }
    return std::nullopt;
}

std::optional<double> finite_size_crossing(const std::vector<double>& x, int Na,
                                           const std::vector<double>& n_a, int Nb,
                                           const std::vector<double>& n_b, double exponent) {
    if (x.size() != n_a.size() || x.size() != n_b.size())
        throw std::invalid_argument("finite_size_crossing: length mismatch");
    if (Na <= 0 || Nb <= Na) throw std::invalid_argument("finite_size_crossing: need 0 < Na < Nb");
    const double sa = std::pow(static_cast<double>(Na), exponent);
    const double sb = std::pow(static_cast<double>(Nb), exponent);
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double d0 = sb * n_b[k] - sa * n_a[k];
        const double d1 = sb * n_b[k + 1] - sa * n_a[k + 1];
        if (d0 < 0.0 && d1 >= 0.0) return x[k] + (x[k + 1] - x[k]) * (-d0) / (d1 - d0);
    }
    return std::nullopt;
}

std::string csv_header() {
    return "N,g,Jx,Jy,Jz,E0,n_mean,Mz,zz_bulk,stag_bulk,alpha,xx_class,phase,branch,status";
}

std::string csv_row(const PointResult& p) {
    const bool ok = p.status.rfind("error", 0) != 0;
    std::string row = std::to_string(p.spec.N) + "," + fmt(p.spec.g) + "," + fmt(p.spec.J.x) + "," +
                      fmt(p.spec.J.y) + "," + fmt(p.spec.J.z) + ",";
    if (ok) {
        row += fmt(p.report.E0) + "," + fmt(p.obs.n_mean) + "," + fmt(p.obs.Mz) + "," +
               fmt(p.obs.zz_bulk) + "," + fmt(p.obs.stag_bulk) + ",";
    } else {
        row += "nan,nan,nan,nan,nan,";
    }
    row += (p.alpha ? fmt(*p.alpha) : std::string()) + ",";
    row += ok && p.obs.xx.size() >= 3 ? to_string(p.phase.xx.kind) : std::string();
    row += "," + (ok ? p.phase.label : std::string()) + "," + (ok ? p.report.branch : std::string());
    row += "," + csv_field(p.status);
    return row;
}

SweepResult run_sweep(const SweepPlan& plan) {
    plan.validate();
    if (plan.axes.empty()) throw ConfigError("a sweep needs at least one axis");
    const auto coords = grid(plan.axes);
    SweepResult res;
    res.points.resize(coords.size());
    parallel_for(coords.size(), plan.resolved_workers(), [&](std::size_t i) {
        PointResult p;
        ModelSpec spec;
        try {
            spec = spec_at(plan.base, plan.axes, coords[i]);
        } catch (const std::exception& e) {
            p.status = std::string("error: ") + e.what();
        }
        if (p.status == "ok")
            p = run_point(spec, wants_two_branch(plan, spec), plan.scf, plan.solver, plan.thresholds);
        p.index = i;
        p.coords = coords[i];
        p.spec = spec;
        res.points[i] = std::move(p);
    });

    // Boundary per line of constant axes[1].
    const std::size_t line_len = plan.axes[0].values().size();
    for (std::size_t start = 0; start < res.points.size(); start += line_len) {
        std::vector<double> x, n, mz;
        std::vector<std::size_t> idx;
        for (std::size_t k = start; k < start + line_len; ++k) {
            const PointResult& p = res.points[k];
            if (p.status.rfind("error", 0) == 0) continue;
            x.push_back(p.coords[0]);
            n.push_back(p.obs.n_mean);
            mz.push_back(p.obs.Mz);
            idx.push_back(k);
        }
        if (x.size() < 2) continue;
        auto b = locate_onset(x, n, mz, plan.thresholds.superradiant_n, plan.jump_threshold);
        if (!b) continue;
        b->line = plan.axes.size() > 1 ? res.points[start].coords[1] : 0.0;
        if (b->order == "first") {
            const PointResult& a = res.points[idx[b->bracket]];
            const PointResult& c = res.points[idx[b->bracket + 1]];
            if (a.two_branch && c.two_branch) {
                if (auto xc = refine_crossing(plan, a, c, 8)) {
                    b->energy_crossing = *xc;
                    b->at = *xc;
                }
            }
        }
        res.boundary.push_back(*b);
    }

    if (!plan.out_dir.empty()) {
        const std::filesystem::path dir(plan.out_dir);
        std::string csv = csv_header() + "\n";
        for (const auto& p : res.points) csv += csv_row(p) + "\n";
        write_text(dir / "results.csv", csv);
        std::string bcsv = "line,at,order,jump,energy_crossing\n";
        for (const auto& b : res.boundary)
            bcsv += fmt(b.line) + "," + fmt(b.at) + "," + b.order + "," + fmt(b.jump) + "," +
                    fmt(b.energy_crossing) + "\n";
        write_text(dir / "boundary.csv", bcsv);
        Json meta{{"version", version_string()}, {"plan", plan_json(plan)}};
        Json pts = Json::array();
        for (const auto& p : res.points) pts.push_back(point_json(p));
        meta["points"] = pts;
        Json bj = Json::array();
        for (const auto& b : res.boundary)
            bj.push_back(Json{{"line", b.line},
                              {"at", b.at},
                              {"order", b.order},
                              {"jump", b.jump},
                              {"energy_crossing", std::isfinite(b.energy_crossing)
                                                      ? Json(b.energy_crossing)
                                                      : Json(nullptr)}});
        meta["boundary"] = bj;
        write_json((dir / "sweep.json").string(), meta);
    }
    return res;
}

std::vector<ScalingCell> run_scaling(const SweepPlan& plan) {
    plan.validate();
    std::set<int> distinct(plan.N_list.begin(), plan.N_list.end());
    if (distinct.size() < 4) throw ConfigError("a scaling study needs at least 4 distinct N");
    const auto coords = grid(plan.axes);
    const std::size_t nN = plan.N_list.size();
    std::vector<PointResult> flat(coords.size() * nN);
    parallel_for(flat.size(), plan.resolved_workers(), [&](std::size_t t) {
        const std::size_t c = t / nN;
        const int N = plan.N_list[t % nN];
        PointResult p;
        ModelSpec spec;
        try {
            spec = spec_at(plan.base, plan.axes, coords[c], N);
            p = run_point(spec, wants_two_branch(plan, spec), plan.scf, plan.solver, plan.thresholds);
        } catch (const std::exception& e) {
            p.status = std::string("error: ") + e.what();
        }
        p.index = t;
        p.coords = coords[c];
        p.spec = spec;
        flat[t] = std::move(p);
    });

    std::vector<ScalingCell> cells(coords.size());
    for (std::size_t c = 0; c < coords.size(); ++c) {
        ScalingCell& cell = cells[c];
        cell.coords = coords[c];
        std::vector<std::pair<int, double>> pts;
        for (std::size_t k = 0; k < nN; ++k) {
            PointResult& p = flat[c * nN + k];
            if (p.status.rfind("error", 0) == 0)
                cell.status = "incomplete";
            else
                pts.emplace_back(p.spec.N, p.obs.n_mean);
            cell.points.push_back(p);
        }
        try {
            cell.fit = scaling_fit(pts);
        } catch (const std::exception& e) {
            cell.status = std::string("error: ") + e.what();
        }
        if (cell.fit)
            for (auto& p : cell.points) {
                if (p.status.rfind("error", 0) == 0) continue;
                p.alpha = cell.fit->alpha;
                p.phase = classify_phase(p.obs, p.alpha, plan.thresholds);
            }
    }

    if (!plan.out_dir.empty()) {
        const std::filesystem::path dir(plan.out_dir);
        std::string csv = csv_header() + "\n";
        for (const auto& cell : cells)
            for (const auto& p : cell.points) csv += csv_row(p) + "\n";
        write_text(dir / "results.csv", csv);
        std::string head;
        for (const auto& a : plan.axes) head += a.name + ",";
        std::string table = head + "alpha,r2,points,regime,status\n";
        for (const auto& cell : cells) {
            for (double v : cell.coords) table += fmt(v) + ",";
            if (cell.fit)
                table += fmt(cell.fit->alpha) + "," + fmt(cell.fit->r2) + "," +
                         std::to_string(cell.fit->points) + "," + cell.fit->regime;
            else
                table += "nan,nan,0,";
            table += "," + csv_field(cell.status) + "\n";
        }
        write_text(dir / "scaling.csv", table);
        Json meta{{"version", version_string()}, {"plan", plan_json(plan)}};
        Json cj = Json::array();
        for (const auto& cell : cells) {
            Json e{{"coords", cell.coords}, {"status", cell.status}};
            if (cell.fit) e["fit"] = *cell.fit;
            Json pts = Json::array();
            for (const auto& p : cell.points) pts.push_back(point_json(p));
            e["points"] = pts;
            cj.push_back(e);
        }
        meta["cells"] = cj;
        write_json((dir / "scaling.json").string(), meta);
    }
    return cells;
}

}  // namespace dicke
