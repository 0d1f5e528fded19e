#pragma once

#include <string>

#include "cyclelab/schubert.hpp"

namespace cyclelab {

/// Section of the hyperplane bundle: a linear functional s(v) = sum_i coefficients(i) v(i).
struct SectionVector {
    CRow coefficients;
    std::string weight_tag = "omega1";
};

struct HermitianMetric {
    CMat gram;
};

/// Standard inner product (identity gram), invariant under G_u = SU(n).
HermitianMetric gu_invariant_metric(const ScenarioConfig& sc);

/// The B-eigenvector of the restricted section space V_S = span(S)^*, extended by zero on the
/// orthogonal complement; unit norm, largest coefficient real positive.
SectionVector highest_weight_section(const SchubertDatum& s, const ScenarioConfig& sc);

/// |s(v)|^2 / (|v|_m^2 |s|_{m*}^2); lies in [0, 1].
double section_norm_sq(const SectionVector& s, const FlagPoint& z, const HermitianMetric& m);
double section_norm_sq(const SectionVector& s, const CVec& v, const HermitianMetric& m);

/// -log |s(z)|^2 on the open cell. Throws OnCellBoundary within the boundary tolerance of B_S.
double r_S(const SectionVector& s, const FlagPoint& z, const SchubertDatum& sd, const HermitianMetric& m,
           const Tolerances& tol = {});

/// (g . s)(v) = s(g^{-1} v).
SectionVector act_section(const GroupElement& g, const SectionVector& s);

}  // namespace cyclelab
