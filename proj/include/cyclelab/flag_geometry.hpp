#pragma once

#include <string>
#include <vector>

#include "cyclelab/lie_core.hpp"
#include "cyclelab/types.hpp"

namespace cyclelab {

/// Flag type as the increasing list of subspace dimensions. Only [1] (projective space) is built in.
struct ParabolicSpec {
    std::vector<int> dimension_steps{1};
};

/// Point of P^{n-1}: unit vector whose first non-negligible coordinate is real positive.
class FlagPoint {
public:
    FlagPoint() = default;
    /// Normalizes and gauge-fixes; throws NumericalDegeneracy for (numerically) zero input.
    static FlagPoint from_vector(const CVec& v);

    const CVec& vec() const { return v_; }
    int ambient_dim() const { return static_cast<int>(v_.size()); }

private:
    CVec v_;
};

/// Unit vector scaled so that the first coordinate with modulus above 1e-10 is real positive.
CVec gauge_fixed(const CVec& v);
/// Unit vector scaled so that its largest-modulus coordinate is real positive.
CVec gauge_fixed_largest(const CVec& v);

struct ScenarioConfig {
    std::string name;
    RealFormSpec rf;
    ParabolicSpec parabolic;
    FlagPoint base_point;
    int domain_sign = 1;  ///< D = {[v] : domain_sign * v*Jv > sign_margin |v|^2}
    int q = 0;            ///< complex dimension of the base cycle
    int n_Z = 0;          ///< complex dimension of Z
    std::string weight_tag = "omega1";
    Tolerances tol;
    int default_k0_resolution = 32;
    int default_k0_extra = 0;
    int schubert_family_size = 8;

    int dim() const { return rf.dim(); }
};

FlagPoint act(const GroupElement& g, const FlagPoint& z);

/// v*Jv / v*v.
double form_value(const CVec& v, const ScenarioConfig& sc);
bool in_domain(const FlagPoint& z, const ScenarioConfig& sc);
bool in_domain_vector(const CVec& v, const ScenarioConfig& sc);

/// True iff the real span of {X z : X in g0} has real dimension 2 n_Z in T_z Z.
bool orbit_is_open(const FlagPoint& z, const ScenarioConfig& sc);

/// Affine chart centred at a point: the largest-modulus homogeneous coordinate (the pivot) is
/// set to 1 and the remaining coordinates, offset by the centre, are the chart coordinates.
struct ChartMap {
    int pivot = 0;
    CVec base;                  ///< centre, scaled so base(pivot) = 1
    std::vector<int> free_index;

    int dim() const { return static_cast<int>(free_index.size()); }
    CVec lift(const CVec& coords) const;  ///< unnormalized homogeneous vector
    FlagPoint point(const CVec& coords) const;
    CVec coords(const FlagPoint& z) const;
};

ChartMap chart(const FlagPoint& z, const ScenarioConfig& sc);
ChartMap chart_of_vector(const CVec& v);

}  // namespace cyclelab
