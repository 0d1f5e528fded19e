#include "cyclelab/cycle_space.hpp"

#include <cmath>

#include "cyclelab/error.hpp"
#include "cyclelab/rng.hpp"

namespace cyclelab {

namespace {

// Columns 1..n-1 of a full QR of u: an orthonormal basis of the complement of u.
CMat orthogonal_complement(const CVec& u) {
    const CMat col = u;
    Eigen::HouseholderQR<CMat> qr(col);
    CMat q = qr.householderQ();
    return q.rightCols(u.size() - 1);
}

}  // namespace

Cycle cycle_from_dual(const CRow& dual) {
    Cycle c;
    c.dual = gauge_fixed(dual.transpose()).transpose();
    return c;
}

Cycle cycle_from_group(const GroupElement& g, const ScenarioConfig& sc) {
    Cycle c = translate(g, base_cycle(sc));
    c.representative = g;
    return c;
}

Cycle translate(const GroupElement& g, const Cycle& c) {
    Cycle out = cycle_from_dual(c.dual * g.matrix().inverse());
    if (c.representative) out.representative = g * *c.representative;
    return out;
}

bool same_cycle(const Cycle& a, const Cycle& b, double tolerance) {
    return a.dual.size() == b.dual.size() && (a.dual - b.dual).cwiseAbs().maxCoeff() < tolerance;
}

CMat complex_k_orbit_span(const RealFormSpec& rf, const CVec& z, double tolerance) {
    const int n = static_cast<int>(z.size());
    std::vector<CVec> basis{z / z.norm()};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (const auto& x : rf.k0) {
            CVec w = x * basis[i];
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis) w -= b * (b.adjoint() * w)(0, 0);
            if (w.norm() > tolerance) basis.push_back(w / w.norm());
            if (static_cast<int>(basis.size()) == n) break;
        }
    }
    CMat out(n, static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) out.col(static_cast<int>(i)) = basis[i];
    return out;
}

Cycle base_cycle(const ScenarioConfig& sc) {
    const CMat span = complex_k_orbit_span(sc.rf, sc.base_point.vec(), sc.tol.rank);
    const int n = sc.dim();
    if (span.cols() != n - 1) fail(ErrorCode::InvalidInput, "base cycle is not a hyperplane");
    CVec u = CVec::Zero(n);
    // The normal direction: project coordinate vectors off the span and keep the largest remainder.
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        CVec w = CVec::Unit(n, i);
        w -= span * (span.adjoint() * w);
        if (w.norm() > best + 1e-12) {
            best = w.norm();
            u = w / w.norm();
        }
    }
    Cycle c = cycle_from_dual(u.adjoint());
    c.representative = GroupElement::identity(n);
    return c;
}

int cycle_dim(const Cycle& c) { return static_cast<int>(c.dual.size()) - 2; }

CMat cycle_basis(const Cycle& c) { return orthogonal_complement(c.dual.adjoint()); }

std::vector<FlagPoint> cycle_points(const Cycle& c, int count, std::uint64_t seed) {
    const CMat basis = cycle_basis(c);
    std::vector<FlagPoint> out;
    Rng rng(derive_seed(seed, 0x6379));
    for (int i = 0; i < count; ++i) {
        const CVec g = rng.complex_normal_vector(static_cast<int>(basis.cols()));
        out.push_back(FlagPoint::from_vector(basis * g));
    }
    return out;
}

double incidence_residual(const FlagPoint& z, const Cycle& c) { return std::abs((c.dual * z.vec())(0, 0)); }

double cycle_margin(const Cycle& c, const ScenarioConfig& sc) {
    const CMat u = cycle_basis(c);
    const CMat restricted = static_cast<double>(sc.domain_sign) * (u.adjoint() * sc.rf.form * u);
    Eigen::SelfAdjointEigenSolver<CMat> es(restricted, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool cycle_in_domain(const Cycle& c, const ScenarioConfig& sc) { return cycle_margin(c, sc) > sc.tol.sign_margin; }

FlagPoint point_of_cycle(const Cycle& c) {
    if (c.dual.size() != 2) fail(ErrorCode::InvalidInput, "cycle is not a point");
    return FlagPoint::from_vector(cycle_basis(c).col(0));
}

Cycle cycle_of_point(const FlagPoint& z) {
    if (z.ambient_dim() != 2) fail(ErrorCode::InvalidInput, "point cycles live in P^1");
    CRow d(2);
    d << z.vec()(1), -z.vec()(0);
    return cycle_from_dual(d);
}

IncidencePoint incidence_pair(const FlagPoint& z, const Cycle& c, double tolerance) {
    if (z.ambient_dim() != c.dual.size()) fail(ErrorCode::InvalidInput, "dimension mismatch");
    if (incidence_residual(z, c) >= tolerance) fail(ErrorCode::NotIncident, "point does not lie on the cycle");
    return {z, c};
}

CRow FiberParam::dual_at(const CVec& c) const {
    CRow d = centre;
    for (int a = 0; a < dim(); ++a) d += c(a) * directions[a];
    return d;
}

Cycle FiberParam::member(const CVec& c) const { return cycle_from_dual(dual_at(c)); }

FiberParam mu_fiber(const FlagPoint& y, const ScenarioConfig& sc) {
    if (!in_domain(y, sc)) fail(ErrorCode::NotInDomain, "point is not in D");
    const CMat u = orthogonal_complement(y.vec());
    const CMat jinv = sc.rf.form.inverse();
    const CMat m = u.adjoint() * jinv * u;
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    const int k = static_cast<int>(m.rows());
    std::vector<CRow> duals;
    for (int e = 0; e < k; ++e) duals.push_back(gauge_fixed(u * es.eigenvectors().col(e)).adjoint());

    int centre = -1;
    for (int e = 0; e < k; ++e) {
        if (cycle_in_domain(cycle_from_dual(duals[e]), sc)) {
            if (centre >= 0) fail(ErrorCode::FiberEmpty, "ambiguous fiber centre");
            centre = e;
        }
    }
    if (centre < 0) fail(ErrorCode::FiberEmpty, "no cycle through the point lies in D");
    const double lc = es.eigenvalues()(centre);
    FiberParam f;
    f.y = y;
    f.centre = duals[centre];
    for (int e = 0; e < k; ++e) {
        if (e == centre) continue;
        const double le = es.eigenvalues()(e);
        if (le * lc >= 0.0) fail(ErrorCode::FiberEmpty, "dual form on the fiber has unexpected signature");
        f.directions.push_back(duals[e] * std::sqrt(std::abs(lc / le)));
    }
    return f;
}

}  // namespace cyclelab
