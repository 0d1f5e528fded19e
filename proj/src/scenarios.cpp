#include "cyclelab/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "cyclelab/cycle_space.hpp"
#include "cyclelab/error.hpp"

namespace cyclelab {

ScenarioConfig make_scenario(const ScenarioParams& params) {
    const int n = static_cast<int>(params.form.rows());
    if (params.base_point.size() != n) fail(ErrorCode::InvalidInput, "base point dimension does not match the form");
    if (params.domain_sign != 1 && params.domain_sign != -1) fail(ErrorCode::InvalidInput, "domain_sign must be +1 or -1");
    if (params.k0_resolution < 1 || params.k0_extra < 0) fail(ErrorCode::InvalidInput, "invalid K0 sampling defaults");

    ScenarioConfig sc;
    sc.name = params.name;
    sc.tol = params.tol;
    sc.rf = make_real_form(params.form, params.iwasawa_frame, params.tol);
    sc.base_point = FlagPoint::from_vector(params.base_point);
    sc.domain_sign = params.domain_sign;
    sc.n_Z = n - 1;
    sc.default_k0_resolution = params.k0_resolution;
    sc.default_k0_extra = params.k0_extra;

    if (!in_domain(sc.base_point, sc)) fail(ErrorCode::InvalidInput, "base point is not in D");
    if (!orbit_is_open(sc.base_point, sc)) fail(ErrorCode::InvalidInput, "G0-orbit of the base point is not open");
    const CMat span = complex_k_orbit_span(sc.rf, sc.base_point.vec(), sc.tol.rank);
    sc.q = static_cast<int>(span.cols()) - 1;
    if (sc.q != sc.n_Z - 1)
        fail(ErrorCode::InvalidInput, "only base cycles that are hyperplanes of Z are supported");
    return sc;
}

ScenarioParams su11_params() {
    const double r = 1.0 / std::numbers::sqrt2;
    ScenarioParams p;
    p.name = "su11";
    p.form = CMat::Identity(2, 2);
    p.form(1, 1) = -1.0;
    p.iwasawa_frame = CMat(2, 2);
    p.iwasawa_frame << r, r, r, -r;
    p.base_point = CVec::Unit(2, 1);
    p.domain_sign = -1;
    p.k0_resolution = 32;
    p.k0_extra = 0;
    return p;
}

ScenarioParams su21_params() {
    const double r = 1.0 / std::numbers::sqrt2;
    ScenarioParams p;
    p.name = "su21";
    p.form = CMat::Identity(3, 3);
    p.form(2, 2) = -1.0;
    p.iwasawa_frame = CMat::Zero(3, 3);
    p.iwasawa_frame << r, 0, r, 0, 1, 0, r, 0, -r;
    p.base_point = CVec::Unit(3, 0);
    p.domain_sign = 1;
    p.k0_resolution = 3;
    p.k0_extra = 48;
    return p;
}

ScenarioConfig make_su11(const Tolerances& tol) {
    auto p = su11_params();
    p.tol = tol;
    return make_scenario(p);
}

ScenarioConfig make_su21(const Tolerances& tol) {
    auto p = su21_params();
    p.tol = tol;
    return make_scenario(p);
}

ScenarioConfig scenario_by_name(const std::string& name, const Tolerances& tol) {
    if (name == "su11") return make_su11(tol);
    if (name == "su21") return make_su21(tol);
    fail(ErrorCode::InvalidInput, "unknown scenario '" + name + "'");
}

std::vector<std::string> scenario_names() { return {"su11", "su21"}; }

}  // namespace cyclelab
