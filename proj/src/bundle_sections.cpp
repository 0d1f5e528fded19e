#include "cyclelab/bundle_sections.hpp"

#include <cmath>

#include "cyclelab/error.hpp"

namespace cyclelab {

HermitianMetric gu_invariant_metric(const ScenarioConfig& sc) { return {CMat::Identity(sc.dim(), sc.dim())}; }

SectionVector highest_weight_section(const SchubertDatum& s, const ScenarioConfig& sc) {
    if (sc.weight_tag != "omega1") fail(ErrorCode::InvalidInput, "only the first fundamental weight is supported");
    const int n = sc.dim();
    const int w = static_cast<int>(s.span.cols());
    const CMat& b = s.borel.matrix();
    const CMat binv = b.adjoint();

    // Nilpotent generators of B restricted to span(S), in the orthonormal coordinates of span(S).
    std::vector<CMat> nilpotent, cartan;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            CMat e = CMat::Zero(n, n);
            e(i, j) = 1.0;
            nilpotent.push_back(s.span.adjoint() * (b * e * binv) * s.span);
        }
    for (int i = 0; i + 1 < n; ++i) {
        CMat h = CMat::Zero(n, n);
        h(i, i) = 1.0;
        h(i + 1, i + 1) = -1.0;
        cartan.push_back(s.span.adjoint() * (b * h * binv) * s.span);
    }

    // Common left kernel: xi X = 0 for every nilpotent X, i.e. X^* xi^* = 0.
    Eigen::MatrixXcd stacked(w * static_cast<int>(nilpotent.size()), w);
    for (std::size_t k = 0; k < nilpotent.size(); ++k)
        stacked.middleRows(static_cast<int>(k) * w, w) = nilpotent[k].adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int kernel = 0;
    for (int i = 0; i < w; ++i)
        if (i >= sv.size() || sv(i) <= sc.tol.rank) ++kernel;
    if (kernel != 1)
        fail(ErrorCode::EigenvectorAmbiguity, "B-eigenspace has dimension " + std::to_string(kernel));
    const Eigen::VectorXcd xi_conj = svd.matrixV().col(w - 1);
    const CRow xi = xi_conj.adjoint();

    for (const auto& h : cartan) {
        const CRow image = xi * h;
        const cplx chi = (image * xi.adjoint())(0, 0);
        if ((image - chi * xi).norm() > sc.tol.intersection)
            fail(ErrorCode::EigenvectorAmbiguity, "kernel vector is not a torus eigenvector");
    }

    const CVec coeffs = gauge_fixed_largest(CVec((xi * s.span.adjoint()).transpose()));
    SectionVector sec;
    sec.coefficients = coeffs.transpose();
    sec.weight_tag = sc.weight_tag;
    return sec;
}

double section_norm_sq(const SectionVector& s, const CVec& v, const HermitianMetric& m) {
    const double vv = (v.adjoint() * m.gram * v)(0, 0).real();
    const double ss = (s.coefficients * m.gram.inverse() * s.coefficients.adjoint())(0, 0).real();
    return std::norm((s.coefficients * v)(0, 0)) / (vv * ss);
}

double section_norm_sq(const SectionVector& s, const FlagPoint& z, const HermitianMetric& m) {
    return section_norm_sq(s, z.vec(), m);
}

double r_S(const SectionVector& s, const FlagPoint& z, const SchubertDatum& sd, const HermitianMetric& m,
           const Tolerances& tol) {
    if (schubert_residual(z, sd) >= tol.intersection) fail(ErrorCode::InvalidInput, "point is not on S");
    const double nsq = section_norm_sq(s, z, m);
    if (!(nsq > tol.boundary * tol.boundary)) fail(ErrorCode::OnCellBoundary, "point lies on B_S");
    return -std::log(nsq);
}

SectionVector act_section(const GroupElement& g, const SectionVector& s) {
    SectionVector out = s;
    out.coefficients = s.coefficients * g.matrix().inverse();
    return out;
}

}  // namespace cyclelab
