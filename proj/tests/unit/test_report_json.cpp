#include <cmath>

#include "cyclelab/report_json.hpp"
#include "cyclelab/scenarios.hpp"
#include "test_support.hpp"

using namespace cyclelab;

TEST(ReportJson, ComplexAndVectors) {
    EXPECT_EQ(to_json(cplx(1.5, -2.0)).dump(), "[1.5,-2.0]");
    CVec v(2);
    v << cplx(1.0, 0.0), cplx(0.0, 1.0);
    EXPECT_EQ(to_json(v).dump(), "[[1.0,0.0],[0.0,1.0]]");
    const auto z = to_json(FlagPoint::from_vector(v));
    EXPECT_EQ(z["kind"], "point");
    EXPECT_EQ(z["vector"].size(), 2u);
    const auto c = to_json(base_cycle(make_su21()));
    EXPECT_EQ(c["kind"], "cycle");
    EXPECT_EQ(c["dual"].size(), 3u);
}

TEST(ReportJson, ExhaustionSampleFields) {
    const ScenarioConfig sc = make_su11();
    const ExhaustionSample s = r_MD(base_cycle(sc), sc);
    const auto j = to_json(s);
    for (const char* key : {"subject", "value", "argmax_slice", "argmax_k", "arginf_cycle", "optimizer"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_NEAR(j["value"].get<double>(), std::log(2.0), 1e-6);
    EXPECT_TRUE(j["arginf_cycle"].is_null());
}

TEST(ReportJson, LeviReportCounts) {
    LeviReport r;
    r.point = base_cycle(make_su21());
    r.levi_matrix = Eigen::MatrixXcd::Identity(2, 2);
    r.eigenvalues = {1.0, 1.0};
    r.n_pos = 2;
    r.verdict = Verdict::psh_ok;
    const auto j = to_json(r);
    EXPECT_EQ(j["n_pos"], 2);
    EXPECT_EQ(j["verdict"], "psh_ok");
    EXPECT_EQ(j["point"]["kind"], "cycle");
    EXPECT_EQ(j["levi_matrix"].size(), 2u);
}

TEST(ReportJson, VerificationReportAndSummary) {
    VerificationReport r;
    r.scenario = "su11";
    r.seed = 7;
    r.suites.push_back({"psh", {{"a", true, 0.1, 1.0, "<", 3, ""}}});
    auto j = to_json(r);
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["seed"], 7);
    EXPECT_FALSE(j.contains("timing"));
    EXPECT_EQ(j["environment"]["tool"], "cyclelab");
    EXPECT_EQ(j["suites"][0]["checks"][0]["relation"], "<");
    EXPECT_NE(summary_text(r).find("PASS"), std::string::npos);

    r.suites[0].checks.push_back({"b", false, 5.0, 1.0, "<", 1, "worst at 3"});
    r.elapsed_seconds = 1.25;
    j = to_json(r);
    EXPECT_EQ(j["passed"], false);
    EXPECT_EQ(j["timing"]["elapsed_seconds"], 1.25);
    EXPECT_EQ(j["suites"][0]["checks"][1]["detail"], "worst at 3");
    const std::string text = summary_text(r);
    EXPECT_NE(text.find("FAIL"), std::string::npos);
    EXPECT_NE(text.find("verification FAILED"), std::string::npos);
}

TEST(ReportJson, EnvironmentStampIsStable) {
    EXPECT_EQ(environment_stamp().dump(), environment_stamp().dump());
    EXPECT_EQ(environment_stamp()["version"], "1.0.0");
}
