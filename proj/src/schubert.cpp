#include "cyclelab/schubert.hpp"

#include <cmath>
#include <numbers>

#include "cyclelab/error.hpp"
#include "cyclelab/rng.hpp"

namespace cyclelab {

namespace {

GroupElement standard_borel_conjugator(const ScenarioConfig& sc) {
    CMat b = sc.rf.iwasawa_frame;
    const cplx det = b.determinant();
    b.col(b.cols() - 1) *= std::conj(det) / std::abs(det);
    return GroupElement(b);
}

GroupElement family_translate(const ScenarioConfig& sc, int which) {
    if (which == 0) return GroupElement::identity(sc.dim());
    const int d = static_cast<int>(sc.rf.k0.size());
    const auto h = halton_point(static_cast<std::uint64_t>(which), d);
    std::vector<double> c(d);
    for (int i = 0; i < d; ++i) c[i] = -std::numbers::pi + 2.0 * std::numbers::pi * h[i];
    return k0_exp(sc.rf, c);
}

}  // namespace

SchubertDatum schubert_from_borel(const ScenarioConfig& sc, const GroupElement& conjugator, int index) {
    const int n = sc.dim();
    const CMat& b = conjugator.matrix();
    if (max_abs(b.adjoint() * b - CMat::Identity(n, n)) > 1e-10)
        fail(ErrorCode::InvalidInput, "Borel conjugator must be unitary");
    SchubertDatum s;
    s.borel = conjugator;
    s.index = index;
    s.dim_S = sc.n_Z - sc.q;
    s.span = b.leftCols(s.dim_S + 1);
    s.boundary_span = b.leftCols(s.dim_S);
    if (s.dim_S + 1 == n - 1) s.dual = CRow(gauge_fixed(b.col(n - 1)).adjoint());
    s.cell_base = FlagPoint::from_vector(b.col(s.dim_S));
    return s;
}

SchubertDatum make_schubert(const ScenarioConfig& sc, int which) {
    if (which < 0 || which >= sc.schubert_family_size)
        fail(ErrorCode::UnknownFamilyMember, "family index " + std::to_string(which) + " out of range");
    return schubert_from_borel(sc, family_translate(sc, which) * standard_borel_conjugator(sc), which);
}

SchubertDatum translate(const GroupElement& k, const SchubertDatum& s, const ScenarioConfig& sc) {
    return schubert_from_borel(sc, k * s.borel, -1);
}

double schubert_residual(const FlagPoint& z, const SchubertDatum& s) {
    const CVec& v = z.vec();
    return (v - s.span * (s.span.adjoint() * v)).norm();
}

bool in_cell(const FlagPoint& z, const SchubertDatum& s, double tolerance) {
    if (schubert_residual(z, s) >= tolerance) return false;
    const CVec comp = s.span.col(s.dim_S);
    return std::abs((comp.adjoint() * z.vec())(0, 0)) > tolerance;
}

std::vector<FlagPoint> intersect_base_cycle(const SchubertDatum& s, const ScenarioConfig& sc) {
    const Cycle c0 = base_cycle(sc);
    const CRow r = c0.dual * s.span;
    if (s.dim_S != 1) fail(ErrorCode::IntersectionFailure, "intersection is not finite for this Schubert dimension");
    if (r.norm() < sc.tol.intersection) fail(ErrorCode::IntersectionFailure, "Schubert variety lies inside C0");
    CVec x(2);
    x << r(1), -r(0);
    const FlagPoint z = FlagPoint::from_vector(s.span * x);
    if (incidence_residual(z, c0) >= sc.tol.intersection || schubert_residual(z, s) >= sc.tol.intersection)
        fail(ErrorCode::IntersectionFailure, "intersection residual above tolerance");
    if (!in_domain(z, sc)) fail(ErrorCode::IntersectionFailure, "intersection point is not in D");
    if (!in_cell(z, s, sc.tol.intersection)) fail(ErrorCode::IntersectionFailure, "intersection point lies on B_S");
    return {z};
}

FlagPoint line_intersection(const CRow& a, const CRow& b) {
    if (a.size() != 3 || b.size() != 3) fail(ErrorCode::InvalidInput, "line intersection needs dual vectors of P^2");
    CVec x(3);
    x << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0);
    if (x.norm() < 1e-12 * a.norm() * b.norm()) fail(ErrorCode::IntersectionFailure, "lines coincide");
    return FlagPoint::from_vector(x);
}

CVec SliceDatum::cell_lift(const CVec& beta) const { return base_lift + parent.boundary_span * beta; }

FlagPoint SliceDatum::cell_point(const CVec& beta) const { return FlagPoint::from_vector(cell_lift(beta)); }

CVec SliceDatum::cell_coords(const FlagPoint& z) const {
    const CVec& v = z.vec();
    const cplx t = (complement.adjoint() * v)(0, 0);
    const cplx tj = (complement.adjoint() * base_lift)(0, 0);
    if (std::abs(t) < 1e-15) fail(ErrorCode::OnCellBoundary, "point lies on B_S");
    const CVec p = v * (tj / t);
    return parent.boundary_span.adjoint() * (p - base_lift);
}

FlagPoint SliceDatum::an_point(const RealFormSpec& rf, const std::vector<double>& a_coords,
                               const std::vector<double>& n_coords) const {
    const int n = rf.dim();
    const CMat conj = parent.borel.matrix() * rf.iwasawa_frame.adjoint();
    CMat a = CMat::Zero(n, n), x = CMat::Zero(n, n);
    for (std::size_t i = 0; i < a_coords.size() && i < rf.a0.size(); ++i) a += a_coords[i] * rf.a0[i];
    for (std::size_t i = 0; i < n_coords.size() && i < rf.n0.size(); ++i) x += n_coords[i] * rf.n0[i];
    const CMat g = conj * exp_matrix(a) * exp_matrix(x) * conj.adjoint();
    return FlagPoint::from_vector(g * base.vec());
}

SliceDatum schubert_slice(const SchubertDatum& s, const FlagPoint& z_j, const ScenarioConfig& sc) {
    const auto points = intersect_base_cycle(s, sc);
    int index = -1;
    for (std::size_t i = 0; i < points.size(); ++i)
        if ((points[i].vec() - z_j.vec()).norm() < sc.tol.intersection) index = static_cast<int>(i);
    if (index < 0) fail(ErrorCode::InvalidSlicePoint, "point is not in C0 cap S");
    SliceDatum slice;
    slice.parent = s;
    slice.base = points[index];
    slice.index = index;
    slice.base_lift = points[index].vec();
    slice.complement = s.span.col(s.dim_S);
    return slice;
}

std::vector<SliceDatum> schubert_slices(const SchubertDatum& s, const ScenarioConfig& sc) {
    std::vector<SliceDatum> out;
    for (const auto& z : intersect_base_cycle(s, sc)) out.push_back(schubert_slice(s, z, sc));
    return out;
}

bool slice_contains(const SliceDatum& slice, const FlagPoint& z, const ScenarioConfig& sc, int path_samples) {
    if (!in_cell(z, slice.parent, sc.tol.intersection) || !in_domain(z, sc)) return false;
    const CVec beta = slice.cell_coords(z);
    for (int i = 1; i <= path_samples; ++i) {
        const double t = static_cast<double>(i) / path_samples;
        if (!in_domain_vector(slice.cell_lift(t * beta), sc)) return false;
    }
    return true;
}

IncidenceRecord pi_sigma(const SliceDatum& slice, const Cycle& c, const ScenarioConfig& sc, int starts,
                         std::uint64_t seed) {
    if (slice.parent.dim_S != 1) fail(ErrorCode::IncidenceMiss, "unsupported Schubert dimension");
    const cplx f0 = (c.dual * slice.base_lift)(0, 0);
    const cplx grad = (c.dual * slice.parent.boundary_span)(0, 0);
    if (!(std::abs(grad) > 0.0)) fail(ErrorCode::IncidenceMiss, "cycle meets the cell boundary");

    Rng rng(derive_seed(seed, 0x7069));
    std::vector<cplx> roots;
    const int total = std::max(starts, 1);
    for (int s = 0; s < total; ++s) {
        cplx beta = s == 0 ? cplx(0.0) : 4.0 * rng.complex_normal();
        for (int it = 0; it < 20; ++it) {
            const cplx f = f0 + grad * beta;
            if (std::abs(f) <= 1e-15 * (1.0 + std::abs(beta))) break;
            beta -= f / grad;
        }
        if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) continue;
        bool seen = false;
        for (const auto& r : roots)
            if (std::abs(r - beta) <= 1e-8 * (1.0 + std::abs(r))) seen = true;
        if (!seen) roots.push_back(beta);
    }

    IncidenceRecord rec;
    rec.cycle = c;
    rec.slice_index = slice.index;
    int count = 0;
    for (const auto& r : roots) {
        CVec beta(1);
        beta(0) = r;
        const FlagPoint p = slice.cell_point(beta);
        if (!slice_contains(slice, p, sc)) continue;
        if (count == 0) {
            rec.point = p;
            rec.beta = beta;
        }
        ++count;
    }
    if (count == 0) fail(ErrorCode::IncidenceMiss, "cycle does not meet the slice");
    if (count > 1) fail(ErrorCode::UniquenessViolation, std::to_string(count) + " distinct slice points");
    rec.solution_count = count;
    rec.residual = incidence_residual(rec.point, c);
    if (rec.residual >= sc.tol.intersection) fail(ErrorCode::IncidenceMiss, "incidence residual above tolerance");
    return rec;
}

bool meets_cell_boundary(const Cycle& c, const SchubertDatum& s, double tolerance) {
    if (s.dim_S >= 2) return true;
    return std::abs((c.dual * s.boundary_span)(0, 0)) < tolerance;
}

}  // namespace cyclelab
