#include "cyclelab/flag_geometry.hpp"

#include <cmath>

#include "cyclelab/error.hpp"

namespace cyclelab {

CVec gauge_fixed(const CVec& v) {
    const double nrm = v.norm();
    if (!(nrm >= 1e-14) || !std::isfinite(nrm)) fail(ErrorCode::NumericalDegeneracy, "degenerate homogeneous vector");
    CVec u = v / nrm;
    for (int i = 0; i < u.size(); ++i) {
        const double a = std::abs(u(i));
        if (a > 1e-10) {
            u *= std::conj(u(i)) / a;
            u(i) = a;
            break;
        }
    }
    return u;
}

CVec gauge_fixed_largest(const CVec& v) {
    const double nrm = v.norm();
    if (!(nrm >= 1e-14) || !std::isfinite(nrm)) fail(ErrorCode::NumericalDegeneracy, "degenerate vector");
    CVec u = v / nrm;
    int k = 0;
    for (int i = 1; i < u.size(); ++i)
        if (std::abs(u(i)) > std::abs(u(k)) * (1.0 + 1e-12)) k = i;
    const double a = std::abs(u(k));
    u *= std::conj(u(k)) / a;
    u(k) = a;
    return u;
}

FlagPoint FlagPoint::from_vector(const CVec& v) {
    FlagPoint z;
    z.v_ = gauge_fixed(v);
    return z;
}

FlagPoint act(const GroupElement& g, const FlagPoint& z) { return FlagPoint::from_vector(g.matrix() * z.vec()); }

double form_value(const CVec& v, const ScenarioConfig& sc) {
    return (v.adjoint() * sc.rf.form * v)(0, 0).real() / v.squaredNorm();
}

bool in_domain_vector(const CVec& v, const ScenarioConfig& sc) {
    return sc.domain_sign * form_value(v, sc) > sc.tol.sign_margin;
}

bool in_domain(const FlagPoint& z, const ScenarioConfig& sc) { return in_domain_vector(z.vec(), sc); }

bool orbit_is_open(const FlagPoint& z, const ScenarioConfig& sc) {
    const CVec& v = z.vec();
    const int n = static_cast<int>(v.size());
    RMat tangent(2 * n, static_cast<int>(sc.rf.g0.size()));
    for (std::size_t k = 0; k < sc.rf.g0.size(); ++k) {
        const CVec xv = sc.rf.g0[k] * v;
        const CVec t = xv - v * (v.adjoint() * xv)(0, 0);
        for (int i = 0; i < n; ++i) {
            tangent(i, static_cast<int>(k)) = t(i).real();
            tangent(n + i, static_cast<int>(k)) = t(i).imag();
        }
    }
    Eigen::JacobiSVD<RMat> svd(tangent);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > sc.tol.rank) ++rank;
    return rank == 2 * sc.n_Z;
}

CVec ChartMap::lift(const CVec& coords) const {
    CVec v = base;
    for (int a = 0; a < dim(); ++a) v(free_index[a]) += coords(a);
    return v;
}

FlagPoint ChartMap::point(const CVec& coords) const { return FlagPoint::from_vector(lift(coords)); }

CVec ChartMap::coords(const FlagPoint& z) const {
    const cplx p = z.vec()(pivot);
    if (std::abs(p) < 1e-14) fail(ErrorCode::NumericalDegeneracy, "point outside the chart");
    CVec c(dim());
    for (int a = 0; a < dim(); ++a) c(a) = z.vec()(free_index[a]) / p - base(free_index[a]);
    return c;
}

ChartMap chart_of_vector(const CVec& v) {
    ChartMap m;
    int pivot = 0;
    for (int i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(pivot)) * (1.0 + 1e-12)) pivot = i;
    m.pivot = pivot;
    m.base = v / v(pivot);
    m.base(pivot) = 1.0;
    for (int i = 0; i < v.size(); ++i)
        if (i != pivot) m.free_index.push_back(i);
    return m;
}

ChartMap chart(const FlagPoint& z, const ScenarioConfig&) { return chart_of_vector(z.vec()); }

}  // namespace cyclelab
