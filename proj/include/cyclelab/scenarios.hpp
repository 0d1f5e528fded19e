#pragma once

#include <string>
#include <vector>

#include "cyclelab/flag_geometry.hpp"

namespace cyclelab {

/// Raw data of a scenario on projective space P^{n-1}. Everything else (subalgebras, q, n_Z)
/// is derived and validated by make_scenario.
struct ScenarioParams {
    std::string name;
    CMat form;
    CMat iwasawa_frame;
    CVec base_point;
    int domain_sign = 1;
    int k0_resolution = 32;
    int k0_extra = 0;
    Tolerances tol;
};

/// Validates: base point in D with open G0-orbit, cycles of codimension one in Z (q = n_Z - 1).
ScenarioConfig make_scenario(const ScenarioParams& params);

ScenarioParams su11_params();
ScenarioParams su21_params();

/// SU(1,1) on P^1, D = negative lines (the unit disc w -> [w:1]), z0 = [0:1].
ScenarioConfig make_su11(const Tolerances& tol = {});
/// SU(2,1) on P^2, D = positive lines, z0 = [1:0:0], base cycle P(C^2 + 0).
ScenarioConfig make_su21(const Tolerances& tol = {});

/// "su11" or "su21"; throws InvalidInput otherwise.
ScenarioConfig scenario_by_name(const std::string& name, const Tolerances& tol = {});
std::vector<std::string> scenario_names();

}  // namespace cyclelab
