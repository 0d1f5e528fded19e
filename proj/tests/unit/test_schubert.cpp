#include <cmath>

#include "cyclelab/scenarios.hpp"
#include "cyclelab/schubert.hpp"
#include "test_support.hpp"

using namespace cyclelab;

namespace {

FlagPoint pt(std::initializer_list<cplx> xs) {
    CVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (cplx x : xs) v(i++) = x;
    return FlagPoint::from_vector(v);
}

double dist(const FlagPoint& a, const FlagPoint& b) {
    // Chordal distance sin(angle) of the unit lifts, as the part of b orthogonal to a.
    return (b.vec() - a.vec() * a.vec().dot(b.vec())).norm();
}

/// S = P(span(e1, e3)) in P^2 (dual (0, 1, 0)) with B_S the null line [1:0:1].
SchubertDatum line_e1_e3() {
    SchubertDatum s;
    s.dim_S = 1;
    s.span = CMat::Zero(3, 2);
    const double r = 1.0 / std::sqrt(2.0);
    s.span(0, 0) = r;
    s.span(2, 0) = r;
    s.span(0, 1) = r;
    s.span(2, 1) = -r;
    s.boundary_span = s.span.leftCols(1);
    CRow d = CRow::Zero(3);
    d(1) = 1.0;
    s.dual = d;
    s.borel = GroupElement::identity(3);
    s.index = -1;
    s.cell_base = FlagPoint::from_vector(s.span.col(1));
    return s;
}

}  // namespace

TEST(MakeSchubert, Su11IsWholeLineWithNullBoundaryPoint) {
    const ScenarioConfig sc = make_su11();
    const SchubertDatum s = make_schubert(sc, 0);
    EXPECT_EQ(s.dim_S, 1);
    EXPECT_EQ(s.span.cols(), 2);
    EXPECT_LT(dist(FlagPoint::from_vector(s.boundary_span.col(0)), pt({1.0, 1.0})), 1e-12);
}

TEST(MakeSchubert, Su21IsLineWithPointBoundary) {
    const ScenarioConfig sc = make_su21();
    const SchubertDatum s = make_schubert(sc, 0);
    EXPECT_EQ(s.dim_S, 1);
    ASSERT_TRUE(s.dual.has_value());
    EXPECT_LT((*s.dual * s.span).norm(), 1e-12);
    EXPECT_EQ(s.boundary_span.cols(), 1);
    const FlagPoint b = FlagPoint::from_vector(s.boundary_span.col(0));
    EXPECT_LT(schubert_residual(b, s), 1e-12);
    EXPECT_FALSE(in_cell(b, s));
    EXPECT_FALSE(in_domain(b, sc));
}

TEST(MakeSchubert, UnknownMember) {
    const ScenarioConfig sc = make_su21();
    EXPECT_CYCLELAB_ERROR(make_schubert(sc, sc.schubert_family_size), ErrorCode::UnknownFamilyMember);
    EXPECT_CYCLELAB_ERROR(make_schubert(sc, -1), ErrorCode::UnknownFamilyMember);
}

TEST(MakeSchubert, FamilyMembersAreK0Translates) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        const SchubertDatum s0 = make_schubert(sc, 0);
        for (int i = 1; i < sc.schubert_family_size; ++i) {
            const SchubertDatum si = make_schubert(sc, i);
            const GroupElement k = si.borel * s0.borel.inverse();
            EXPECT_TRUE(is_member(k, sc.rf, SubgroupTag::K0)) << "member " << i;
        }
    }
}

TEST(MakeSchubert, K0ConjugateConsistency) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        Rng rng(14);
        const SchubertDatum s0 = make_schubert(sc, 0);
        for (int i = 0; i < 10; ++i) {
            const GroupElement k = random_k0(sc.rf, rng);
            const SchubertDatum a = translate(k, s0, sc);
            const SchubertDatum b = schubert_from_borel(sc, k * s0.borel);
            for (int j = 0; j < 8; ++j) {
                const FlagPoint z = FlagPoint::from_vector(a.span * rng.complex_normal_vector(a.dim_S + 1));
                EXPECT_LT(schubert_residual(z, b), 1e-10);
            }
            EXPECT_LT(schubert_residual(FlagPoint::from_vector(a.boundary_span.col(0)), b), 1e-10);
            EXPECT_FALSE(in_cell(FlagPoint::from_vector(a.boundary_span.col(0)), b));
        }
    }
}

TEST(IntersectBaseCycle, Su11IsZ0) {
    const ScenarioConfig sc = make_su11();
    const auto pts = intersect_base_cycle(make_schubert(sc, 0), sc);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_LT(dist(pts[0], pt({0.0, 1.0})), 1e-12);
}

TEST(IntersectBaseCycle, Su21LineByCrossProduct) {
    const ScenarioConfig sc = make_su21();
    const auto pts = intersect_base_cycle(line_e1_e3(), sc);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_LT(dist(pts[0], pt({1.0, 0.0, 0.0})), 1e-12);
    CRow a = CRow::Zero(3), b = CRow::Zero(3);
    a(2) = 1.0;
    b(1) = 1.0;
    EXPECT_LT(dist(line_intersection(a, b), pt({1.0, 0.0, 0.0})), 1e-15);
}

TEST(IntersectBaseCycle, FamilyPointsAreInDAndInTheCell) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        for (int i = 0; i < sc.schubert_family_size; ++i) {
            const SchubertDatum s = make_schubert(sc, i);
            const auto pts = intersect_base_cycle(s, sc);
            ASSERT_EQ(pts.size(), 1u);
            EXPECT_TRUE(in_domain(pts[0], sc));
            const CVec b = s.boundary_span.col(0);
            EXPECT_GT(std::sqrt(std::max(0.0, 1.0 - std::norm(pts[0].vec().dot(b)))), 1e-8);
        }
    }
}

TEST(IntersectBaseCycle, FailsWhenSIsInsideC0) {
    const ScenarioConfig sc = make_su21();
    SchubertDatum s = line_e1_e3();
    s.span = CMat::Zero(3, 2);
    s.span(0, 0) = 1.0;
    s.span(1, 1) = 1.0;
    EXPECT_CYCLELAB_ERROR(intersect_base_cycle(s, sc), ErrorCode::IntersectionFailure);
}

TEST(SchubertSlice, RejectsPointOffTheIntersection) {
    const ScenarioConfig sc = make_su21();
    EXPECT_CYCLELAB_ERROR(schubert_slice(make_schubert(sc, 0), pt({0.0, 0.0, 1.0}), sc),
                          ErrorCode::InvalidSlicePoint);
}

TEST(SchubertSlice, IdentityCoordinatesGiveBasePoint) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        for (const SliceDatum& sl : schubert_slices(make_schubert(sc, 0), sc)) {
            EXPECT_LT(dist(sl.cell_point(CVec::Zero(sl.parent.dim_S)), sl.base), 1e-15);
            const std::vector<double> a(sc.rf.a0.size(), 0.0), n(sc.rf.n0.size(), 0.0);
            EXPECT_LT(dist(sl.an_point(sc.rf, a, n), sl.base), 1e-14);
        }
    }
}

TEST(SchubertSlice, Su11SliceFillsTheDisc) {
    const ScenarioConfig sc = make_su11();
    const SliceDatum sl = schubert_slices(make_schubert(sc, 0), sc).front();
    const ChartMap ch = chart(sc.base_point, sc);
    for (int i = -9; i <= 9; ++i)
        for (int j = -9; j <= 9; ++j) {
            CVec w(1);
            w(0) = cplx(0.1 * i, 0.1 * j);
            if (std::abs(w(0)) >= 0.99) continue;
            EXPECT_TRUE(slice_contains(sl, ch.point(w), sc)) << w(0);
        }
    // A0 N0 orbit samples stay in D.
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const FlagPoint z = sl.an_point(sc.rf, {rng.uniform(-3.0, 3.0)}, {rng.uniform(-3.0, 3.0)});
        EXPECT_TRUE(in_domain(z, sc));
    }
}

TEST(SchubertSlice, Su21OrbitSamplesLieOnTheLineInD) {
    const ScenarioConfig sc = make_su21();
    const SliceDatum sl = schubert_slices(make_schubert(sc, 0), sc).front();
    Rng rng(6);
    for (int k = 0; k < 50; ++k) {
        const FlagPoint z = sl.an_point(sc.rf, {rng.uniform(-2.0, 2.0)},
                                        {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
        EXPECT_TRUE(in_domain(z, sc));
        EXPECT_LT(schubert_residual(z, sl.parent), 1e-10);
        EXPECT_TRUE(slice_contains(sl, z, sc));
    }
}

TEST(PiSigma, Su21BaseCycleOnHandBuiltLine) {
    const ScenarioConfig sc = make_su21();
    const SliceDatum sl = schubert_slice(line_e1_e3(), pt({1.0, 0.0, 0.0}), sc);
    const IncidenceRecord r = pi_sigma(sl, base_cycle(sc), sc);
    EXPECT_LT(dist(r.point, pt({1.0, 0.0, 0.0})), 1e-12);
    EXPECT_EQ(r.solution_count, 1);
}

TEST(PiSigma, UniqueForCyclesNearC0) {
    const ScenarioConfig sc = make_su21();
    const auto slices = schubert_slices(make_schubert(sc, 0), sc);
    Rng rng(60);
    int checked = 0;
    while (checked < 50) {
        CMat x(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) x(r, c) = 0.25 * rng.complex_normal();
        x -= (x.trace() / 3.0) * CMat::Identity(3, 3);
        const Cycle c = translate(GroupElement::unchecked(exp_matrix(x)), base_cycle(sc));
        if (!cycle_in_domain(c, sc)) continue;
        ++checked;
        for (const auto& sl : slices) {
            const IncidenceRecord r = pi_sigma(sl, c, sc, 16, 1000 + checked);
            EXPECT_EQ(r.solution_count, 1);
            EXPECT_LT(r.residual, 1e-10);
            EXPECT_LT(incidence_residual(r.point, c), 1e-10);
        }
    }
}

TEST(PiSigma, A0N0Equivariance) {
    for (const ScenarioConfig& sc : {make_su11(), make_su21()}) {
        const SliceDatum sl = schubert_slices(make_schubert(sc, 0), sc).front();
        Rng rng(25);
        for (int i = 0; i < 25; ++i) {
            const GroupElement an = random_a0(sc.rf, rng, 0.5) * random_n0(sc.rf, rng, 0.5);
            const Cycle c = translate(random_g0(sc.rf, rng, 0.4), base_cycle(sc));
            const IncidenceRecord r1 = pi_sigma(sl, c, sc);
            const IncidenceRecord r2 = pi_sigma(sl, translate(an, c), sc);
            EXPECT_LT(dist(r2.point, act(an, r1.point)), 1e-9);
        }
    }
}

TEST(PiSigma, MissForCycleOutsideMD) {
    const ScenarioConfig sc = make_su11();
    const SliceDatum sl = schubert_slices(make_schubert(sc, 0), sc).front();
    EXPECT_CYCLELAB_ERROR(pi_sigma(sl, cycle_of_point(pt({2.0, 1.0})), sc), ErrorCode::IncidenceMiss);
}

TEST(MeetsCellBoundary, Examples) {
    const ScenarioConfig su11 = make_su11();
    const SchubertDatum s11 = make_schubert(su11, 0);
    EXPECT_FALSE(meets_cell_boundary(cycle_of_point(pt({0.5, 1.0})), s11));
    EXPECT_TRUE(meets_cell_boundary(cycle_of_point(pt({1.0, 1.0})), s11));
    const ScenarioConfig su21 = make_su21();
    EXPECT_FALSE(meets_cell_boundary(base_cycle(su21), make_schubert(su21, 0)));
}
