#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclelab/cycle_space.hpp"

namespace cyclelab {

/// Schubert variety S = closure of B(z) for an Iwasawa-Borel subgroup B = borel * B_std * borel^{-1}
/// (B_std = upper triangular). The conjugator is unitary; S = P(span) with span the first
/// dim_S + 1 columns, and the cell boundary B_S = P(boundary_span), the first dim_S columns.
struct SchubertDatum {
    GroupElement borel;
    int index = 0;  ///< family member, -1 for ad hoc conjugators
    int dim_S = 0;
    CMat span;
    CMat boundary_span;
    std::optional<CRow> dual;  ///< defining functional when S is a hyperplane of Z
    FlagPoint cell_base;
};

/// Member `which` of the finite defining family: the K0-translates k_i B_0 k_i^{-1} of the
/// standard Iwasawa-Borel B_0, with k_0 = I and k_i (i > 0) at Halton points of K0.
SchubertDatum make_schubert(const ScenarioConfig& sc, int which);
SchubertDatum schubert_from_borel(const ScenarioConfig& sc, const GroupElement& conjugator, int index = -1);
SchubertDatum translate(const GroupElement& k, const SchubertDatum& s, const ScenarioConfig& sc);

/// Distance of the unit lift of z from span(S).
double schubert_residual(const FlagPoint& z, const SchubertDatum& s);
bool in_cell(const FlagPoint& z, const SchubertDatum& s, double tolerance = 1e-10);

/// C0 cap S; every returned point is checked to lie in D and in the open cell.
std::vector<FlagPoint> intersect_base_cycle(const SchubertDatum& s, const ScenarioConfig& sc);

/// Intersection point of two distinct lines of P^2 given by dual vectors (cross product).
FlagPoint line_intersection(const CRow& a, const CRow& b);

/// Schubert slice through z_j. Points of the open cell are written z_j + boundary_span * beta
/// (the cell chart); the A0N0 parametrization is kept alongside.
struct SliceDatum {
    SchubertDatum parent;
    FlagPoint base;
    int index = 0;
    CVec base_lift;
    CVec complement;  ///< unit direction of span(S) orthogonal to B_S

    CVec cell_lift(const CVec& beta) const;
    FlagPoint cell_point(const CVec& beta) const;
    /// beta of a point of the open cell; throws OnCellBoundary on B_S.
    CVec cell_coords(const FlagPoint& z) const;
    /// exp(sum t_i A_i) exp(sum x_i N_i) z_j with A0N0 conjugated to the Borel of this slice.
    FlagPoint an_point(const RealFormSpec& rf, const std::vector<double>& a_coords,
                       const std::vector<double>& n_coords) const;
};

SliceDatum schubert_slice(const SchubertDatum& s, const FlagPoint& z_j, const ScenarioConfig& sc);
std::vector<SliceDatum> schubert_slices(const SchubertDatum& s, const ScenarioConfig& sc);

/// Component test: z in the open cell and in D, and the straight cell-chart path from z_j to z
/// stays in D.
bool slice_contains(const SliceDatum& slice, const FlagPoint& z, const ScenarioConfig& sc, int path_samples = 64);

struct IncidenceRecord {
    Cycle cycle;
    int slice_index = 0;
    FlagPoint point;
    CVec beta;
    double residual = 0.0;
    int solution_count = 0;
};

/// The point of C on the slice, with uniqueness probed from `starts` seeded Newton starts.
IncidenceRecord pi_sigma(const SliceDatum& slice, const Cycle& c, const ScenarioConfig& sc, int starts = 16,
                         std::uint64_t seed = 42);

/// C cap B_S nonempty (within tolerance).
bool meets_cell_boundary(const Cycle& c, const SchubertDatum& s, double tolerance = 1e-10);

}  // namespace cyclelab
