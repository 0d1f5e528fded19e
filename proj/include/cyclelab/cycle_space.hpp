#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclelab/flag_geometry.hpp"

namespace cyclelab {

/// Translate g C0 of the base cycle. Built-in cycles are hyperplanes of P^{n-1}, so the dual
/// vector (unit norm, first non-negligible coefficient real positive) is the canonical datum.
struct Cycle {
    CRow dual;
    std::optional<GroupElement> representative;
};

Cycle cycle_from_dual(const CRow& dual);
Cycle cycle_from_group(const GroupElement& g, const ScenarioConfig& sc);
/// g . C has dual dual(C) g^{-1}.
Cycle translate(const GroupElement& g, const Cycle& c);
bool same_cycle(const Cycle& a, const Cycle& b, double tolerance = 1e-10);

/// Orthonormal basis of the complex span of K z (closure of z under the complexified k0).
CMat complex_k_orbit_span(const RealFormSpec& rf, const CVec& z, double tolerance);

Cycle base_cycle(const ScenarioConfig& sc);
int cycle_dim(const Cycle& c);

/// Orthonormal basis (columns) of the subspace whose projectivization is the cycle.
CMat cycle_basis(const Cycle& c);

/// Fubini-Study uniform sample of the cycle; a point cycle returns its point `count` times.
std::vector<FlagPoint> cycle_points(const Cycle& c, int count, std::uint64_t seed);

/// |dual(C) v| for the unit lift v of z.
double incidence_residual(const FlagPoint& z, const Cycle& c);

/// Smallest eigenvalue of domain_sign * J restricted to the cycle (orthonormal basis).
double cycle_margin(const Cycle& c, const ScenarioConfig& sc);
bool cycle_in_domain(const Cycle& c, const ScenarioConfig& sc);

/// The unique point of a point cycle (q = 0).
FlagPoint point_of_cycle(const Cycle& c);
Cycle cycle_of_point(const FlagPoint& z);

struct IncidencePoint {
    FlagPoint z;
    Cycle C;
};

IncidencePoint incidence_pair(const FlagPoint& z, const Cycle& c, double tolerance = 1e-10);
inline const FlagPoint& mu(const IncidencePoint& x) { return x.z; }
inline const Cycle& nu(const IncidencePoint& x) { return x.C; }

/// Cycles through y: dual(c) = centre + sum_a c_a direction_a. The directions are normalized
/// so that the admissible members are exactly |c| < 1 (the dual form is
/// centre_value * (1 - |c|^2)).
struct FiberParam {
    FlagPoint y;
    CRow centre;
    std::vector<CRow> directions;

    int dim() const { return static_cast<int>(directions.size()); }
    CRow dual_at(const CVec& c) const;
    Cycle member(const CVec& c) const;
};

FiberParam mu_fiber(const FlagPoint& y, const ScenarioConfig& sc);

}  // namespace cyclelab
