#include "cyclelab/rng.hpp"
#include "cyclelab/scenarios.hpp"
#include "cyclelab/verification.hpp"
#include "test_support.hpp"

using namespace cyclelab;

namespace {

void expect_all_passed(const std::vector<SuiteResult>& suites) {
    for (const auto& s : suites)
        for (const auto& c : s.checks)
            EXPECT_TRUE(c.passed) << s.name << "/" << c.name << " measured " << c.measured << " " << c.relation << " "
                                  << c.tolerance << " " << c.detail;
}

}  // namespace

TEST(Samplers, StayInsideTheirDomains) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        Rng rng(1);
        for (int i = 0; i < 100; ++i) {
            EXPECT_TRUE(cycle_in_domain(random_cycle_in_md(sc, rng, 0.5), sc));
            EXPECT_TRUE(in_domain(random_point_in_d(sc, rng, 0.5), sc));
            const FlagPoint y = random_certificate_point(sc, rng);
            EXPECT_TRUE(in_domain(y, sc));
            if (sc.q > 0) EXPECT_GE(form_value(y.vec(), sc), 0.05);
        }
    }
}

TEST(Checks, MetricRoundTripAndFdConvergence) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        EXPECT_TRUE(check_metric_invariance(sc, 100, 42).passed);
        EXPECT_TRUE(check_iwasawa_round_trip(sc, 100, 42).passed);
        EXPECT_TRUE(check_cartan_involutive(sc, 100, 42).passed);
    }
    const CheckResult fd = check_fd_convergence();
    EXPECT_TRUE(fd.passed);
    EXPECT_GE(fd.measured, 3.5);
}

TEST(Checks, Deterministic) {
    const ExhaustionEngine e(make_su21());
    const CheckResult a = check_k0_invariance(e, 5, 9), b = check_k0_invariance(e, 5, 9);
    EXPECT_EQ(a.measured, b.measured);
    EXPECT_EQ(a.count, 5);
    const CheckResult c = check_unique_incidence(e, 10, 9), d = check_unique_incidence(e, 10, 9);
    EXPECT_EQ(c.measured, d.measured);
}

TEST(RunSuites, Su11QuickAllPass) {
    const ExhaustionEngine e(make_su11());
    const auto suites = run_suites("all", e, quick_counts(), 42, 1);
    EXPECT_EQ(suites.size(), suite_names().size());
    expect_all_passed(suites);
}

TEST(RunSuites, Su21QuickAllPass) {
    const ExhaustionEngine e(make_su21());
    expect_all_passed(run_suites("all", e, quick_counts(), 42, 2));
}

TEST(RunSuites, SingleSuiteAndUnknownName) {
    const ExhaustionEngine e(make_su11());
    const auto one = run_suites("incidence", e, quick_counts(), 42, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].name, "incidence");
    EXPECT_CYCLELAB_ERROR(run_suites("bogus", e, quick_counts(), 42, 1), ErrorCode::InvalidInput);
}

TEST(SuiteResultTest, PassedIffAllChecksPass) {
    SuiteResult s{"x", {}};
    EXPECT_TRUE(s.passed());
    s.checks.push_back({"a", true, 0.0, 1.0, "<", 1, ""});
    EXPECT_TRUE(s.passed());
    s.checks.push_back({"b", false, 2.0, 1.0, "<", 1, ""});
    EXPECT_FALSE(s.passed());
}
