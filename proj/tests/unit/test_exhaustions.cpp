#include <cmath>
#include <limits>

#include "cyclelab/exhaustions.hpp"
#include "cyclelab/rng.hpp"
#include "cyclelab/scenarios.hpp"
#include "test_support.hpp"

using namespace cyclelab;

namespace {

FlagPoint pt(std::initializer_list<cplx> xs) {
    CVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (cplx x : xs) v(i++) = x;
    return FlagPoint::from_vector(v);
}

double su11_closed_form(double w) { return -2.0 * std::log(1.0 - w) + std::log(1.0 + w * w) + std::log(2.0); }

/// r_MD on SU21 lines in D+, as a function of the dual vector.
double su21_r_md_closed_form(const CRow& l) {
    const double rho2 = (std::norm(l(0)) + std::norm(l(1))) / std::norm(l(2));
    return std::log((1.0 + rho2) / (1.0 - rho2));
}

double su21_r_d_closed_form(const CVec& y) {
    const double t = std::norm(y(2)) / (std::norm(y(0)) + std::norm(y(1)));
    return std::log((1.0 + t) / (1.0 - t));
}

/// Brute-force infimum of the SU21 r_MD closed form over the pencil of lines through y. The
/// pencil is l = cos(theta) u* + e^{i phi} sin(theta) v* for an orthonormal basis u, v of the
/// annihilator of y; a 200 x 200 grid in (theta, phi) is followed by grid zooms around the best
/// point, recentring without shrinking while the best point sits on the window edge.
double su21_fiber_oracle(const CVec& y) {
    Eigen::MatrixXcd a(1, 3);
    a.row(0) = y.adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXcd u = svd.matrixV().col(1), v = svd.matrixV().col(2);
    auto value = [&](double theta, double phi) {
        CRow l(3);
        const cplx e = std::polar(std::sin(theta), phi);
        for (int i = 0; i < 3; ++i) l(i) = std::cos(theta) * std::conj(u(i)) + e * std::conj(v(i));
        const double rho2 = (std::norm(l(0)) + std::norm(l(1))) / std::norm(l(2));
        if (!(rho2 < 1.0)) return std::numeric_limits<double>::infinity();
        return su21_r_md_closed_form(l);
    };
    const double pi = 3.141592653589793;
    double best = std::numeric_limits<double>::infinity(), bt = 0.0, bp = 0.0;
    const int n = 200;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j) {
            const double t = 0.5 * pi * i / n, ph = 2.0 * pi * j / n;
            const double f = value(t, ph);
            if (f < best) best = f, bt = t, bp = ph;
        }
    double h = 2.0 * pi / n;
    for (int level = 0; level < 200 && h > 1e-13; ++level) {
        const double ct = bt, cp = bp;
        int edge = 0;
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j) {
                const double f = value(ct + i * h / 10.0, cp + j * h / 10.0);
                if (f < best) {
                    best = f, bt = ct + i * h / 10.0, bp = cp + j * h / 10.0;
                    edge = std::abs(i) == 10 || std::abs(j) == 10;
                }
            }
        if (!edge) h *= 0.5;
    }
    return best;
}

CVec chart_coords(std::initializer_list<cplx> xs) {
    CVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (cplx x : xs) v(i++) = x;
    return v;
}

}  // namespace

TEST(RMD, Su11Examples) {
    const ScenarioConfig sc = make_su11();
    EXPECT_NEAR(r_MD(cycle_of_point(pt({0.0, 1.0})), sc).value, std::log(2.0), 1e-6);
    EXPECT_NEAR(r_MD(cycle_of_point(pt({0.5, 1.0})), sc).value, std::log(10.0), 1e-6);
}

TEST(RMD, Su11ClosedFormAlongRadius) {
    const ExhaustionEngine e(make_su11());
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const double r = rng.uniform(0.0, 0.95);
        const cplx w = std::polar(r, rng.uniform(0.0, 6.283185307179586));
        const ExhaustionSample s = e.r_md(cycle_of_point(pt({w, 1.0})));
        EXPECT_NEAR(s.value, su11_closed_form(r), 1e-6 * std::max(1.0, s.value)) << w;
        EXPECT_TRUE(is_member(s.argmax_k, e.scenario().rf, SubgroupTag::K0));
    }
}

TEST(RMD, Su21ClosedForm) {
    const ExhaustionEngine e(make_su21());
    Rng rng(9);
    int n = 0;
    while (n < 10) {
        CRow l(3);
        l << 0.6 * rng.complex_normal(), 0.6 * rng.complex_normal(), 1.0;
        const Cycle c = cycle_from_dual(l);
        if (!cycle_in_domain(c, e.scenario())) continue;
        ++n;
        EXPECT_NEAR(e.r_md(c).value, su21_r_md_closed_form(l), 1e-6);
    }
}

TEST(RMD, K0Invariance) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        const ExhaustionEngine e(sc);
        Rng rng(17);
        for (int i = 0; i < 10; ++i) {
            const Cycle c = translate(random_g0(sc.rf, rng, 0.6), base_cycle(sc));
            const GroupElement k = random_k0(sc.rf, rng);
            EXPECT_NEAR(e.r_md(translate(k, c)).value, e.r_md(c).value, 1e-6);
        }
    }
}

TEST(RMD, TranslationIdentity) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        const ExhaustionEngine e(sc);
        Rng rng(23);
        for (int i = 0; i < 20; ++i) {
            const Cycle c = translate(random_g0(sc.rf, rng, 0.3), base_cycle(sc));
            const GroupElement k = random_k0(sc.rf, rng);
            double left = 0.0, right = 0.0;
            try {
                left = e.translated_branch(0, k, c);
                right = e.branch(0, k, c);
            } catch (const CycleLabError& err) {
                // Both sides must fail together.
                EXPECT_THROW(e.branch(0, k, c), CycleLabError);
                continue;
            }
            EXPECT_NEAR(left, right, 1e-9);
        }
    }
}

TEST(RMD, DominatesEveryBranch) {
    const ScenarioConfig sc = make_su21();
    const ExhaustionEngine e(sc);
    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
        const Cycle c = translate(random_g0(sc.rf, rng, 0.5), base_cycle(sc));
        const double v = e.r_md(c).value;
        for (int j = 0; j < static_cast<int>(e.slices().size()); ++j)
            EXPECT_GE(v, e.branch(j, GroupElement::identity(3), c) - 1e-12);
    }
}

TEST(RMD, RejectsCycleOutsideMD) {
    const ScenarioConfig sc = make_su21();
    CRow l(3);
    l << 0.0, 1.0, 0.0;
    EXPECT_CYCLELAB_ERROR(r_MD(cycle_from_dual(l), sc), ErrorCode::NotInDomain);
}

TEST(RXD, IsCompositionWithNu) {
    const ScenarioConfig sc11 = make_su11();
    EXPECT_NEAR(r_XD(incidence_pair(sc11.base_point, base_cycle(sc11)), sc11).value, std::log(2.0), 1e-6);
    const ScenarioConfig sc = make_su21();
    const ExhaustionEngine e(sc);
    const Cycle c0 = base_cycle(sc);
    const double ref = e.r_md(c0).value;
    for (const FlagPoint& z : cycle_points(c0, 5, 3)) EXPECT_EQ(e.r_xd(incidence_pair(z, c0)).value, ref);
}

TEST(RD, Su11EqualsRMD) {
    const ScenarioConfig sc = make_su11();
    const ExhaustionEngine e(sc);
    EXPECT_NEAR(e.r_d(pt({0.5, 1.0})).value, std::log(10.0), 1e-6);
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
        const FlagPoint y = pt({std::polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, 6.3)), 1.0});
        EXPECT_NEAR(e.r_d(y).value, e.r_md(cycle_of_point(y)).value, 1e-9);
    }
}

TEST(RD, Su21PointsOfC0) {
    const ScenarioConfig sc = make_su21();
    const ExhaustionEngine e(sc);
    const double ref = e.r_md(base_cycle(sc)).value;
    for (const FlagPoint& y : cycle_points(base_cycle(sc), 3, 8)) {
        const ExhaustionSample s = e.r_d(y);
        EXPECT_LE(s.value, ref + 1e-12);
        ASSERT_TRUE(s.arginf_cycle.has_value());
        EXPECT_LT(incidence_residual(y, *s.arginf_cycle), 1e-10);
    }
}

TEST(RD, Su21MatchesBruteForceFiber) {
    const ScenarioConfig sc = make_su21();
    const ExhaustionEngine e(sc);
    Rng rng(77);
    int n = 0;
    while (n < 4) {
        const CVec v = rng.complex_normal_vector(3);
        const FlagPoint y = FlagPoint::from_vector(v);
        if (form_value(y.vec(), sc) < 0.05) continue;
        ++n;
        const double oracle = su21_fiber_oracle(y.vec());
        EXPECT_NEAR(oracle, su21_r_d_closed_form(y.vec()), 1e-6);
        EXPECT_NEAR(e.r_d(y).value, oracle, 1e-4);
    }
}

TEST(RD, Su21NearBoundaryDiverges) {
    const ScenarioConfig sc = make_su21();
    const ExhaustionEngine e(sc);
    // y = [1 : 0 : c] with normalized form value 1e-4.
    const double c = std::sqrt((1.0 - 1e-4) / (1.0 + 1e-4));
    const FlagPoint y = pt({1.0, 0.0, c});
    ASSERT_NEAR(form_value(y.vec(), sc), 1e-4, 1e-12);
    const double interior = e.r_d(sc.base_point).value;
    const double v = e.r_d(y).value;
    EXPECT_GE(v, interior + 5.0);
    EXPECT_NEAR(v, su21_fiber_oracle(y.vec()), 1e-4);
}

TEST(RD, NotInDomain) {
    EXPECT_CYCLELAB_ERROR(r_D(pt({1.0, 1.0}), make_su11()), ErrorCode::NotInDomain);
    EXPECT_CYCLELAB_ERROR(r_D(pt({0.0, 0.0, 1.0}), make_su21()), ErrorCode::NotInDomain);
}

TEST(EvaluateGrid, Su11RadialSymmetry) {
    const ExhaustionEngine e(make_su11());
    const std::vector<GridPoint> g = evaluate_grid({-0.6, 0.6, 11, -1}, Target::r_md, e);
    ASSERT_EQ(g.size(), 121u);
    for (std::size_t i = 0; i < g.size(); ++i) {
        ASSERT_TRUE(g[i].ok) << g[i].error;
        const double r = std::hypot(g[i].re, g[i].im);
        EXPECT_NEAR(g[i].sample.value, su11_closed_form(r), 1e-6);
    }
    // Row-major with im outer: the first row has constant im.
    EXPECT_EQ(g[0].im, g[10].im);
    EXPECT_LT(g[0].re, g[1].re);
    // Points related by a rotation through a quarter turn agree.
    for (int a = 0; a < 11; ++a)
        for (int b = 0; b < 11; ++b)
            EXPECT_NEAR(g[a * 11 + b].sample.value, g[b * 11 + (10 - a)].sample.value, 1e-6);
}

TEST(EvaluateGrid, EmptyRegionAndRecordedFailures) {
    const ExhaustionEngine e(make_su11());
    EXPECT_TRUE(evaluate_grid({-0.5, 0.5, 0, -1}, Target::r_md, e).empty());
    const auto g = evaluate_grid({-1.5, 1.5, 3, -1}, Target::r_d, e);
    ASSERT_EQ(g.size(), 9u);
    EXPECT_FALSE(g[0].ok);
    EXPECT_FALSE(g[0].error.empty());
    EXPECT_TRUE(g[4].ok);
    EXPECT_NEAR(g[4].sample.value, std::log(2.0), 1e-6);
}

TEST(EvaluateGrid, Su21RDMatchesOracle) {
    const ExhaustionEngine e(make_su21());
    const auto g = evaluate_grid({-0.6, 0.6, 5, -1}, Target::r_d, e, 2);
    ASSERT_EQ(g.size(), 25u);
    for (const auto& p : g) {
        ASSERT_TRUE(p.ok) << p.error;
        const CVec y = chart_coords({1.0, 0.0, cplx(p.re, p.im)});
        EXPECT_NEAR(p.sample.value, su21_fiber_oracle(y / y.norm()), 1e-4);
    }
}

TEST(TargetChartTest, DimensionsAndRS) {
    const ExhaustionEngine e11(make_su11());
    EXPECT_EQ(TargetChart(e11, Target::r_md).dim(), 1);
    EXPECT_EQ(TargetChart(e11, Target::r_s).dim(), 1);
    EXPECT_NEAR(TargetChart(e11, Target::r_s).at(chart_coords({0.0})).value, e11.branch(0, GroupElement::identity(2), base_cycle(e11.scenario())), 1e-12);
    const ExhaustionEngine e21(make_su21());
    EXPECT_EQ(TargetChart(e21, Target::r_md).dim(), 2);
    EXPECT_EQ(TargetChart(e21, Target::r_d).dim(), 2);
}

TEST(ParseTarget, NamesRoundTrip) {
    for (Target t : {Target::r_s, Target::r_md, Target::r_d}) EXPECT_EQ(parse_target(target_name(t)), t);
    EXPECT_CYCLELAB_ERROR(parse_target("r_xyz"), ErrorCode::InvalidInput);
}

TEST(Engine, RejectsBadSettings) {
    OptimizerSettings opt;
    opt.ascent_shrink = 1.5;
    EXPECT_CYCLELAB_ERROR(ExhaustionEngine(make_su11(), opt), ErrorCode::InvalidInput);
}
