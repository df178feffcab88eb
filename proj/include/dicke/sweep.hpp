// sweep.hpp — grid sweeps, phase-boundary extraction and finite-size scaling runs

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/scf.hpp"

namespace dicke {

/// One sweep axis over a named preset parameter: g, J, Jz, Jx, Jy, omega, epsilon.
struct AxisDef {
    std::string name;
    double min{0.0};
    double max{0.0};
    double step{0.02};

    /// min, min + step, ... up to max (inclusive within step * 1e-9).
    std::vector<double> values() const;
};

enum class BranchMode { automatic, always, never };

std::string to_string(BranchMode m);
BranchMode branch_mode_from_string(const std::string& s);

struct SweepPlan {
    ModelPreset base;           // preset kind and fixed parameters
    std::vector<AxisDef> axes;  // 1 or 2; the boundary is searched along axes[0]
    std::vector<int> N_list;    // scaling studies
    ScfConfig scf;
    SolverConfig solver;
    BranchMode branches{BranchMode::automatic};
    PhaseThresholds thresholds;
    double jump_threshold{0.1};  // adjacent-point change in M_z or n_mean marking first order
    std::string out_dir;         // empty: nothing written
    int workers{0};              // 0: DICKE_WORKERS or 1

    /// Throws ConfigError.
    void validate() const;
    /// Worker-pool width after applying the environment default.
    int resolved_workers() const;
};

/// Two-branch solves run when the plan asks for them or, in automatic mode, at
/// g > 0 inside the antiferromagnetic region J_z < -epsilon (J < J_c for the
/// Ising preset).
bool wants_two_branch(const SweepPlan& plan, const ModelSpec& spec);

struct PointResult {
    std::size_t index{0};
    std::vector<double> coords;  // axis values
    ModelSpec spec;              // as requested (no pinning field)
    std::string status{"ok"};    // ok | not-converged | error: ...
    bool two_branch{false};
    ScfReport report;            // selected branch
    std::optional<ScfReport> other;
    ObservableSet obs;
    PhaseLabel phase;
    std::optional<double> alpha;
};

/// Solve one point (two-branch when requested) and compute its observables.
/// Solver errors are captured in `status`.
PointResult run_point(const ModelSpec& spec, bool two_branch, const ScfConfig& scf,
                      const SolverConfig& solver, const PhaseThresholds& th = {});

struct BoundaryPoint {
    double at{0.0};      // location along axes[0]
    double line{0.0};    // axes[1] value (0 for one-axis plans)
    std::string order;   // first | second
    double jump{0.0};    // largest adjacent change of M_z or n_mean at the crossing
    double energy_crossing{std::numeric_limits<double>::quiet_NaN()};
    std::size_t bracket{0};  // index k of the grid pair (k, k + 1) holding the boundary
};

struct SweepResult {
    std::vector<PointResult> points;  // sorted by grid index
    std::vector<BoundaryPoint> boundary;
};

/// First upward crossing of n_mean through `threshold` along one line, linearly
/// interpolated. Tagged first order when an adjacent pair within one grid step
/// of the crossing differs by more than `jump_threshold` in M_z or n_mean; the
/// boundary then sits at the midpoint of that pair. Empty without a crossing.
std::optional<BoundaryPoint> locate_onset(const std::vector<double>& x,
                                          const std::vector<double>& n_mean,
                                          const std::vector<double>& Mz, double threshold,
                                          double jump_threshold);

/// Where E_superradiant - E_normal changes sign along a line, interpolated.
std::optional<double> branch_energy_crossing(const std::vector<double>& x,
                                             const std::vector<double>& E_normal,
                                             const std::vector<double>& E_superradiant);

/// Crossing of the size-scaled photon curves N^exponent n_mean of two chain
/// lengths Na < Nb sampled on a common grid x. At a superradiant critical point
/// <n> grows as N^(1/3), so the curves N^(2/3) <n>/N of different N cross there.
/// Returns the first upward sign change of the (Nb - Na) difference, interpolated.
std::optional<double> finite_size_crossing(const std::vector<double>& x, int Na,
                                           const std::vector<double>& n_a, int Nb,
                                           const std::vector<double>& n_b,
                                           double exponent = 2.0 / 3.0);

SweepResult run_sweep(const SweepPlan& plan);

struct ScalingCell {
    std::vector<double> coords;
    std::vector<PointResult> points;  // one per N
    std::optional<ScalingFit> fit;
    std::string status{"ok"};
};

/// For each grid cell, solve at every N in plan.N_list and fit alpha.
std::vector<ScalingCell> run_scaling(const SweepPlan& plan);

/// CSV header and row of the fixed result schema.
std::string csv_header();
std::string csv_row(const PointResult& p);

/// The model at grid coordinates: each axis sets its named preset parameter
/// (Jx and Jy override the preset couplings); N replaces base.N when given.
ModelSpec spec_at(const ModelPreset& base, const std::vector<AxisDef>& axes,
                  const std::vector<double>& coords, std::optional<int> N = std::nullopt);

}  // namespace dicke
