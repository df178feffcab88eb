#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dicke/sweep.hpp"

using namespace dicke;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SweepPlan dicke_plan(int workers, const std::string& out) {
    SweepPlan plan;
    plan.base.kind = PresetKind::dicke;
    plan.base.N = 60;
    plan.axes = {{"g", 0.3, 0.7, 0.05}};
    plan.solver.backend = Backend::collective;
    plan.workers = workers;
    plan.out_dir = out;
    return plan;
}

}  // namespace

TEST(Sweep, AxisValuesIncludeEndpoint) {
    const auto v = AxisDef{"g", 0.0, 1.0, 0.05}.values();
    ASSERT_EQ(v.size(), 21u);
    EXPECT_NEAR(v.back(), 1.0, 1e-12);
    EXPECT_EQ(AxisDef({"g", 0.3, 0.3, 0.1}).values().size(), 1u);
}

TEST(Sweep, SecondOrderOnset) {
    const std::vector<double> x{0.4, 0.45, 0.5, 0.55, 0.6};
    const std::vector<double> n{0.001, 0.004, 0.008, 0.03, 0.06};
    const std::vector<double> mz{-0.5, -0.5, -0.49, -0.47, -0.44};
    const auto b = locate_onset(x, n, mz, 0.01, 0.1);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->order, "second");
    EXPECT_NEAR(b->at, 0.5 + 0.05 * (0.002 / 0.022), 1e-12);
    EXPECT_EQ(b->bracket, 2u);
}

TEST(Sweep, FirstOrderOnset) {
    const std::vector<double> x{0.5, 0.52, 0.54, 0.56};
    const std::vector<double> n{0.005, 0.008, 0.25, 0.28};
    const std::vector<double> mz{-0.005, -0.006, -0.10, -0.11};
    const auto b = locate_onset(x, n, mz, 0.01, 0.1);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->order, "first");
    EXPECT_NEAR(b->at, 0.53, 1e-12);
    EXPECT_NEAR(b->jump, 0.242, 1e-12);
}

TEST(Sweep, JumpsDeepInsideTheSuperradiantPhaseAreIgnored) {
    const std::vector<double> x{0.4, 0.5, 0.6, 0.7, 0.8};
    const std::vector<double> n{0.001, 0.02, 0.05, 0.08, 0.3};
    const std::vector<double> mz(5, -0.4);
    const auto b = locate_onset(x, n, mz, 0.01, 0.1);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->order, "second");
}

TEST(Sweep, NoOnset) {
    EXPECT_FALSE(locate_onset({0.1, 0.2}, {0.001, 0.002}, {-0.5, -0.5}, 0.01, 0.1));
    EXPECT_THROW(locate_onset({0.1}, {0.001}, {-0.5}, 0.01, 0.1), std::invalid_argument);
}

TEST(Sweep, BranchEnergyCrossing) {
    const std::vector<double> x{0.5, 0.55, 0.6, 0.65};
    const std::vector<double> en{-1.0, -1.1, -1.2, -1.3};
    const std::vector<double> es{-0.9, -1.05, -1.25, -1.3};
    const auto c = branch_energy_crossing(x, en, es);
    ASSERT_TRUE(c);
    EXPECT_NEAR(*c, 0.55 + 0.05 * 0.05 / 0.1, 1e-12);
    EXPECT_FALSE(branch_energy_crossing(x, en, en));
}

TEST(Sweep, FiniteSizeCrossing) {
    // n/N = N^(-2/3) f((g - gc) N^(1/2)) crosses at gc for any monotone f.
    const double gc = 0.43;
    auto f = [](double s) { return std::exp(s); };
    std::vector<double> x, a, b;
    for (double g = 0.3; g < 0.6; g += 0.02) {
        x.push_back(g);
        a.push_back(std::pow(12.0, -2.0 / 3) * f((g - gc) * std::sqrt(12.0)));
        b.push_back(std::pow(16.0, -2.0 / 3) * f((g - gc) * std::sqrt(16.0)));
    }
    const auto c = finite_size_crossing(x, 12, a, 16, b);
    ASSERT_TRUE(c);
    EXPECT_NEAR(*c, gc, 2e-3);
    EXPECT_THROW(finite_size_crossing(x, 16, a, 12, b), std::invalid_argument);
}

TEST(Sweep, SpecAtMapsAxes) {
    ModelPreset base;
    base.kind = PresetKind::dicke_ising;
    base.N = 8;
    const std::vector<AxisDef> axes{{"g", 0, 1, 0.1}, {"J", -0.5, 0.5, 0.1}};
    const ModelSpec s = spec_at(base, axes, {0.4, 0.25}, 12);
    EXPECT_EQ(s.N, 12);
    EXPECT_DOUBLE_EQ(s.g, 0.4);
    EXPECT_DOUBLE_EQ(s.J.z, 1.0);
    base.kind = PresetKind::dicke_xxz;
    const ModelSpec x = spec_at(base, {{"Jz", -2, 2, 0.1}, {"Jx", 0, 1, 0.5}}, {-1.6, 0.5});
    EXPECT_DOUBLE_EQ(x.J.z, -1.6);
    EXPECT_DOUBLE_EQ(x.J.x, 0.5);
    EXPECT_DOUBLE_EQ(x.J.y, 1.0);
    EXPECT_THROW(spec_at(base, {{"colour", 0, 1, 0.1}}, {0.5}), ConfigError);
}

TEST(Sweep, TwoBranchRegion) {
    SweepPlan plan;
    ModelPreset p;
    p.kind = PresetKind::dicke_ising;
    p.g = 0.5;
    p.J = -0.5;
    EXPECT_TRUE(wants_two_branch(plan, p.to_spec()));
    p.J = 0.0;
    EXPECT_FALSE(wants_two_branch(plan, p.to_spec()));
    p.J = -0.5;
    p.g = 0.0;
    EXPECT_FALSE(wants_two_branch(plan, p.to_spec()));
    plan.branches = BranchMode::always;
    EXPECT_TRUE(wants_two_branch(plan, p.to_spec()));
    EXPECT_THROW(branch_mode_from_string("sometimes"), ConfigError);
}

TEST(Sweep, PlanValidation) {
    SweepPlan plan;
    EXPECT_THROW(plan.validate(), ConfigError);
    plan.axes = {{"g", 0, 1, 0.0}};
    EXPECT_THROW(plan.validate(), ConfigError);
    plan.axes = {{"g", 1, 0, 0.1}};
    EXPECT_THROW(plan.validate(), ConfigError);
    plan.axes = {{"g", 0, 1, 0.1}, {"g", 0, 1, 0.1}};
    EXPECT_THROW(plan.validate(), ConfigError);
    plan.axes = {{"g", 0, 1, 0.1}};
    EXPECT_NO_THROW(plan.validate());
    plan.N_list = {8, 10, 12};
    EXPECT_THROW(run_scaling(plan), ConfigError);
}

TEST(Sweep, CsvSchema) {
    EXPECT_EQ(csv_header(), "N,g,Jx,Jy,Jz,E0,n_mean,Mz,zz_bulk,stag_bulk,alpha,xx_class,phase,branch,status");
    PointResult p;
    p.spec.N = 4;
    p.status = "error: boom";
    const std::string row = csv_row(p);
    EXPECT_NE(row.find("nan"), std::string::npos);
    EXPECT_NE(row.find("error: boom"), std::string::npos);
}

TEST(Sweep, DickeLineIsSecondOrderAndIndependentOfWorkers) {
    const auto tmp = std::filesystem::temp_directory_path() / "dicke_sweep_test";
    std::filesystem::remove_all(tmp);
    const SweepResult a = run_sweep(dicke_plan(1, (tmp / "w1").string()));
    const SweepResult b = run_sweep(dicke_plan(3, (tmp / "w3").string()));
    ASSERT_EQ(a.boundary.size(), 1u);
    EXPECT_EQ(a.boundary[0].order, "second");
    EXPECT_NEAR(a.boundary[0].at, 0.5, 0.05);
    const std::string ca = slurp(tmp / "w1" / "results.csv");
    EXPECT_FALSE(ca.empty());
    EXPECT_EQ(ca, slurp(tmp / "w3" / "results.csv"));
    EXPECT_EQ(slurp(tmp / "w1" / "boundary.csv"), slurp(tmp / "w3" / "boundary.csv"));
    EXPECT_TRUE(std::filesystem::exists(tmp / "w1" / "sweep.json"));
    std::filesystem::remove_all(tmp);
}

TEST(Sweep, ScalingFitsEachCell) {
    SweepPlan plan;
    plan.base.kind = PresetKind::dicke;
    plan.axes = {{"g", 0.2, 0.2, 0.1}};
    plan.N_list = {20, 40, 80, 160};
    plan.solver.backend = Backend::collective;
    const auto cells = run_scaling(plan);
    ASSERT_EQ(cells.size(), 1u);
    ASSERT_TRUE(cells[0].fit);
    EXPECT_NEAR(cells[0].fit->alpha, 1.0, 0.1);
    for (const auto& p : cells[0].points) ASSERT_TRUE(p.alpha);
}
