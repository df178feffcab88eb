#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "dicke/effective_hamiltonian.hpp"
#include "dicke/oracle.hpp"
#include "dicke/scf.hpp"
#include "dicke/spin_solvers.hpp"

using namespace dicke;

namespace {

ModelSpec preset(PresetKind k, int N, double g, double J = 0.0, double Jz = 0.0) {
    ModelPreset p;
    p.kind = k;
    p.N = N;
    p.g = g;
    p.J = J;
    p.Jz = Jz;
    return p.to_spec();
}

}  // namespace

TEST(Oracle, DecoupledVacuum) {
    const OracleResult r = full_ground_state(preset(PresetKind::dicke, 2, 0.0));
    EXPECT_NEAR(r.energy, -0.5, 1e-10);
    EXPECT_LT(r.margin, 1e-12);
    const OracleObservables o = full_observables(r);
    EXPECT_NEAR(o.n_mean, 0.0, 1e-12);
    EXPECT_NEAR(o.Mz, -0.5, 1e-10);
}

TEST(Oracle, UncoupledIsingMatchesSpinSolver) {
    const ModelSpec s = preset(PresetKind::dicke_ising, 4, 0.0, 0.25);
    const OracleResult r = full_ground_state(s);
    const GroundState gs = ground_state(build(s, PhotonFrame{}), SolverConfig{});
    EXPECT_NEAR(r.energy, gs.energy, 1e-10);
    EXPECT_NEAR(r.energy, 0.5 - 2.0 - 3 * 0.25, 1e-10);
}

TEST(Oracle, BoundsTheVariationalEnergy) {
    FockTruncation t;
    t.n_max = 60;
    const ScfReport ngs = solve(preset(PresetKind::dicke, 6, 0.6), SeedKind::normal, ScfConfig{},
                                SolverConfig{});
    const OracleResult r = full_ground_state(ngs.spec, t);
    EXPECT_GE(ngs.energy, r.energy - 1e-10);
    EXPECT_LT(ngs.energy - r.energy, 0.02 * std::abs(r.energy));
}

TEST(Oracle, EnergyDecreasesWithCutoff) {
    const ModelSpec s = preset(PresetKind::dicke, 3, 0.9);
    double prev = 1e300;
    for (int n : {6, 10, 16, 24}) {
        FockTruncation t;
        t.n_max = n;
        t.margin_tol = 1.0;
        const double e = full_ground_state(s, t).energy;
        EXPECT_LE(e, prev + 1e-12) << "n_max=" << n;
        prev = e;
    }
}

TEST(Oracle, DeepSuperradiantObservables) {
    FockTruncation t;
    t.n_max = 60;
    const OracleObservables o = full_observables(full_ground_state(preset(PresetKind::dicke, 6, 1.2), t));
    EXPECT_GT(o.n_mean, 0.1);
    EXPECT_LT(std::abs(o.Mz), 0.15);
    ASSERT_EQ(o.sz.size(), 6u);
}

TEST(Oracle, PairExpectations) {
    const OracleResult r = full_ground_state(preset(PresetKind::dicke_xxz, 4, 0.0, 0.0, -10.0));
    const double zz = full_expect_pair(r, 0, Axis::z, 1, Axis::z);
    EXPECT_LT(zz, -0.2);  // antiferromagnetic neighbours
    EXPECT_NEAR(full_photon_number(r.state, 4, r.n_max), 0.0, 1e-12);
}

TEST(Oracle, Errors) {
    FockTruncation t;
    t.n_max = 40;
    EXPECT_THROW(full_ground_state(preset(PresetKind::dicke, 20, 0.3), t), ConfigError);
    t.n_max = 4;
    t.step = 10;
    EXPECT_THROW(full_ground_state(preset(PresetKind::dicke, 4, 1.2), t), CutoffError);
    t.n_max = 1;
    EXPECT_THROW(t.validate(), ConfigError);
}

TEST(Oracle, EigenvectorRoundTrip) {
    FockTruncation t;
    t.n_max = 12;
    t.margin_tol = 1.0;
    const OracleResult r = full_ground_state(preset(PresetKind::dicke, 3, 0.4), t);
    const auto path = std::filesystem::temp_directory_path() / "dicke_oracle_roundtrip.bin";
    write_eigenvector(r, path.string());
    const OracleResult back = read_eigenvector(path.string());
    std::filesystem::remove(path);
    EXPECT_EQ(back.spec.N, 3);
    EXPECT_EQ(back.n_max, 12);
    EXPECT_DOUBLE_EQ(back.energy, r.energy);
    EXPECT_EQ(back.state, r.state);
}

TEST(Oracle, CollectiveSectorMatchesFullSpace) {
    const ModelSpec s = preset(PresetKind::dicke, 4, 0.7);
    FockTruncation t;
    t.n_max = 50;
    EXPECT_NEAR(collective_ground_energy(s, t).energy, full_ground_state(s, t).energy, 1e-9);
}

TEST(Oracle, CollectiveCriticalPointAtLargeN) {
    const ModelSpec s = preset(PresetKind::dicke, 200, 0.5);
    const double E0 = (collective_ground_energy(s).energy - 0.5) / 200;
    EXPECT_NEAR(E0, -0.5012584, 1e-6);
    EXPECT_THROW(collective_ground_energy(preset(PresetKind::dicke_ising, 4, 0.5, 0.1)), ConfigError);
}
