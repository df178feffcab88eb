#include <gtest/gtest.h>

#include <cmath>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/scf.hpp"

using namespace dicke;

namespace {

ModelSpec dicke_spec(int N, double g) {
    ModelPreset p;
    p.N = N;
    p.g = g;
    return p.to_spec();
}

SolverConfig collective() {
    SolverConfig s;
    s.backend = Backend::collective;
    return s;
}

}  // namespace

TEST(Scf, NormalPhaseMatchesPolaritonZeroPoint) {
    const ScfReport r = solve(dicke_spec(200, 0.25), SeedKind::normal, ScfConfig{}, collective());
    ASSERT_TRUE(r.converged) << r.message;
    const double ep = std::sqrt(1.0 + 2 * 0.25), em = std::sqrt(1.0 - 2 * 0.25);
    EXPECT_NEAR(r.E0, -0.5 + (ep + em - 2.0) / (2.0 * 200), 1e-6);
    EXPECT_LT(r.n_mean, 1e-3);
    EXPECT_NEAR(r.Mz, -0.5, 1e-3);
}

TEST(Scf, SuperradiantMeanFieldEnergy) {
    const ScfReport r = solve(dicke_spec(200, 1.0), SeedKind::normal, ScfConfig{}, collective());
    ASSERT_TRUE(r.converged) << r.message;
    EXPECT_NEAR(r.E0, -1.0625, 1e-3);
    EXPECT_GT(r.n_mean, 0.1);
}

TEST(Scf, HistoryIsNonIncreasing) {
    ModelPreset p;
    p.kind = PresetKind::dicke_ising;
    p.N = 8;
    p.g = 0.6;
    p.J = 0.1;
    const ScfReport r = solve(p.to_spec(), SeedKind::normal, ScfConfig{}, SolverConfig{});
    ASSERT_GE(r.history.size(), 2u);
    for (std::size_t k = 1; k < r.history.size(); ++k) {
        const double tol = 1e-11 * std::max(1.0, std::abs(r.history[k - 1].energy));
        EXPECT_LE(r.history[k].energy, r.history[k - 1].energy + tol) << "iteration " << k;
        EXPECT_LE(r.history[k].energy, r.history[k].inner_energy + tol);
    }
}

TEST(Scf, UncoupledChainIsBareSpinModel) {
    ModelPreset p;
    p.kind = PresetKind::dicke_ising;
    p.N = 6;
    p.J = 0.25;
    const ScfReport r = solve(p.to_spec(), SeedKind::normal, ScfConfig{}, SolverConfig{});
    ASSERT_TRUE(r.converged);
    // All spins down: eps * (-N/2) - J_z * 5 bonds * 1/4.
    EXPECT_NEAR(r.energy, 0.5 - 3.0 - 1.0 * 5 * 0.25, 1e-9);
    EXPECT_NEAR(r.n_mean, 0.0, 1e-10);
}

TEST(Scf, FiniteDifferenceGradientReachesSameState) {
    const ModelSpec s = dicke_spec(6, 0.7);
    ScfConfig fd;
    fd.gradient = GradientMode::finite_difference;
    const ScfReport a = solve(s, SeedKind::normal, ScfConfig{}, SolverConfig{});
    const ScfReport b = solve(s, SeedKind::normal, fd, SolverConfig{});
    EXPECT_NEAR(a.E0, b.E0, 1e-8);
}

TEST(Scf, MinimizeFrameLowersEnergy) {
    const ModelSpec s = dicke_spec(8, 0.8);
    SpinMoments m;
    m.X = -2.0;
    m.Z = -3.0;
    m.XX = 5.0;
    const PhotonFrame start{0.0, 0.0, 0.0, 0.0};
    const PhotonFrame f = minimize_frame(s, start, m, ScfConfig{});
    EXPECT_LT(frame_energy(s, f, m), frame_energy(s, start, m));
    const auto g = frame_gradient(s, f, m);
    for (double v : g) EXPECT_LT(std::abs(v), 1e-5);
}

TEST(Scf, Seeds) {
    const ModelSpec s = dicke_spec(8, 0.8);
    const ScfConfig cfg;
    const PhotonFrame n = seed_frame(s, SeedKind::normal, cfg);
    EXPECT_DOUBLE_EQ(n.delta_x, cfg.normal_seed_kick);
    const PhotonFrame sr = seed_frame(s, SeedKind::superradiant, cfg);
    EXPECT_DOUBLE_EQ(sr.lambda, cfg.superradiant_seed_lambda);
    EXPECT_GT(std::abs(sr.delta_x), 0.1);
}

TEST(Scf, TwoBranchPrefersNormalOnTies) {
    const TwoBranchResult r = solve_two_branch(dicke_spec(200, 0.25), ScfConfig{}, collective());
    EXPECT_EQ(r.selected, SeedKind::normal);
    EXPECT_NEAR(r.normal.E0, r.superradiant.E0, 1e-9);
}

TEST(Scf, PinningFieldPerBackend) {
    const ModelSpec s = dicke_spec(4, 0.3);
    SolverConfig d;
    EXPECT_DOUBLE_EQ(pinning_field(s, d), d.degeneracy_field);
    EXPECT_DOUBLE_EQ(pinning_field(s, collective()), 0.0);
    const ScfReport r = solve(s, SeedKind::normal, ScfConfig{}, d);
    EXPECT_DOUBLE_EQ(r.spec.staggered_field, d.degeneracy_field);
}

TEST(Scf, NotConvergedIsReported) {
    ScfConfig cfg;
    cfg.max_outer = 1;
    const ScfReport r = solve(dicke_spec(8, 0.7), SeedKind::normal, cfg, SolverConfig{});
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 1);
}

TEST(Scf, WarmStateMustMatch) {
    const ModelSpec s = dicke_spec(6, 0.4);
    const SpinState wrong = polarized_state(Backend::dense, 4, 3.14159, 0.0);
    EXPECT_THROW(solve_from(s, PhotonFrame{}, wrong, "normal", ScfConfig{}, SolverConfig{}),
                 std::invalid_argument);
}

TEST(Scf, ConfigValidation) {
    ScfConfig c;
    c.shrink = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = ScfConfig{};
    c.tol_E = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_THROW(gradient_mode_from_string("newton"), std::invalid_argument);
}
