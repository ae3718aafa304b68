#include <gtest/gtest.h>

#include <sstream>

#include "pca/errors.hpp"
#include "pca/experiment.hpp"

using namespace pca;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream is(text);
  return ExperimentConfig::parse(is);
}

const char* kSmall = R"(
[lattice]
m_x = 32
m_t = 64
eps = 0.5

[disorder]
n_t_block = 8
n_x_block = 8
counts = 2 10 2 2
seed = 9

[initial]
type = gaussian-schrodinger
region = 1 2
p0_over_m = 0.05

[run]
solvers = automaton dirac schrodinger
snapshot_every = 16
coarse_width = 4
threads = 2

[output]
directory = unused
)";

}  // namespace

TEST(Experiment, ParsesAllSections) {
  const auto c = parse(kSmall);
  EXPECT_EQ(c.m_x, 32);
  EXPECT_EQ(c.m_t, 64);
  EXPECT_DOUBLE_EQ(c.eps, 0.5);
  EXPECT_EQ(c.counts, (std::vector<int>{2, 10, 2, 2}));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.region_first, 1);
  EXPECT_EQ(c.region_last, 2);
  EXPECT_EQ(c.threads, 2);
  EXPECT_TRUE(c.wants("dirac"));
  EXPECT_FALSE(c.wants("free-translation"));
  EXPECT_EQ(c.space_blocks(), 4);
  EXPECT_EQ(c.time_blocks(), 8);
  EXPECT_EQ(c.effective_steps(), 64);
  EXPECT_NO_THROW(c.validate());
  const auto layout = c.region_layout();
  EXPECT_EQ(layout.regions, 4);
  EXPECT_EQ(layout.reflected, (std::vector<int>{0, 1}));
  const auto plan = c.plan();
  EXPECT_EQ(plan.time_blocks, 8);
  EXPECT_EQ(plan.count(3, 1), 10);
}

TEST(Experiment, EchoRoundTrip) {
  auto c = parse(kSmall);
  c.sigma = 1.25;
  c.basis = BasisIndex{Mover::left, Charge::minus, 3};
  std::ostringstream a;
  c.write(a);
  const auto back = parse(a.str());
  std::ostringstream b;
  back.write(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(back.sigma, c.sigma);
  EXPECT_EQ(a.str().find("threads"), std::string::npos);

  c.initial = InitialType::delta_basis;
  std::ostringstream d;
  c.write(d);
  EXPECT_EQ(parse(d.str()).basis, c.basis);
  EXPECT_EQ(d.str().find("sigma"), std::string::npos);
}

TEST(Experiment, RejectsUnknownKeysAndValues) {
  EXPECT_THROW((void)parse("[lattice]\nmx = 3\n"), ParseError);
  EXPECT_THROW((void)parse("[latice]\nm_x = 3\n"), ParseError);
  EXPECT_THROW((void)parse("[lattice]\nm_x = three\n"), ParseError);
  EXPECT_THROW((void)parse("[initial]\ntype = spline\n"), ParseError);
  EXPECT_THROW((void)parse("[initial]\nregion = 1\n"), ParseError);
  EXPECT_THROW((void)parse("[initial]\nbasis = Q + 1\n"), ParseError);
  EXPECT_THROW((void)parse("[run]\ndirac_method = magic\n"), ParseError);
  EXPECT_THROW((void)parse("[run]\ntrajectories = maybe\n"), ParseError);
}

TEST(Experiment, ValidationErrors) {
  auto base = parse(kSmall);
  auto c = base;
  c.n_x_block = 7;
  EXPECT_THROW(c.validate(), GeometryError);
  c = base;
  c.counts = {1, 2, 3};
  EXPECT_THROW(c.validate(), GeometryError);
  c = base;
  c.counts = {65, 0, 0, 0};
  EXPECT_THROW(c.validate(), InfeasiblePlanError);
  c = base;
  c.region_last = 5;
  EXPECT_THROW(c.validate(), GeometryError);
  c = base;
  c.steps = 65;
  EXPECT_THROW(c.validate(), RangeError);
  c = base;
  c.solvers = {"automaton", "lattice-qcd"};
  EXPECT_THROW(c.validate(), ParseError);
  c = base;
  c.v_over_m = {0, 0, 0, 0};
  EXPECT_THROW(c.validate(), ParseError);
  c = base;
  c.dirac_order = 3;
  EXPECT_THROW(c.validate(), ParseError);
}

TEST(Experiment, DisorderSummary) {
  const auto c = parse(kSmall);
  const auto field = make_field(c);
  EXPECT_EQ(field.event_count(), 8u * 16u);
  const auto s = summarize_disorder(field, {8, 8});
  EXPECT_EQ(s.events, 128u);
  EXPECT_EQ(s.mean_counts, (std::vector<double>{2, 10, 2, 2}));
  EXPECT_DOUBLE_EQ(s.v_over_m[1], 1.5);
  EXPECT_DOUBLE_EQ(s.v_over_m[0], -0.5);
  std::ostringstream os;
  write_summary(os, s);
  EXPECT_NE(os.str().find("events 128\n"), std::string::npos);
  EXPECT_THROW((void)summarize_disorder(field, {5, 8}), GeometryError);
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
  auto c = parse(kSmall);
  c.threads = 1;
  const auto one = run_experiment(c, false);
  c.threads = 3;
  const auto three = run_experiment(c, false);
  std::ostringstream a, b;
  write_run_report(a, one);
  write_run_report(b, three);
  EXPECT_EQ(a.str(), b.str());
  ASSERT_EQ(one.snapshots.size(), three.snapshots.size());
  for (std::size_t i = 0; i < one.snapshots.size(); ++i) EXPECT_EQ(one.snapshots[i].p_auto, three.snapshots[i].p_auto);
}

TEST(Experiment, WaveAndTrajectoryEnginesAgree) {
  auto c = parse(kSmall);
  c.solvers = {"automaton"};
  const auto traj = run_experiment(c, false);
  c.trajectories = false;
  const auto wave = run_experiment(c, false);
  ASSERT_EQ(traj.snapshots.size(), wave.snapshots.size());
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) EXPECT_EQ(traj.snapshots[i].p_auto, wave.snapshots[i].p_auto);
}
