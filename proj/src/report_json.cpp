#include "cyclelab/report_json.hpp"

#include <cstdio>

namespace cyclelab {

using nlohmann::ordered_json;

namespace {

template <class M>
ordered_json matrix_json(const M& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(cplx(m(i, j))));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class V>
ordered_json vector_json(const V& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(cplx(v(i))));
    return out;
}

}  // namespace

bool VerificationReport::passed() const {
    for (const SuiteResult& s : suites)
        if (!s.passed()) return false;
    return true;
}

ordered_json environment_stamp() {
    ordered_json env;
    env["tool"] = "cyclelab";
    env["version"] = "1.0.0";
#if defined(__clang__)
    env["compiler"] = "clang " __clang_version__;
#elif defined(__GNUC__)
    env["compiler"] = "gcc " __VERSION__;
#else
    env["compiler"] = "unknown";
#endif
    env["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                   std::to_string(EIGEN_MINOR_VERSION);
    env["json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                  "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    return env;
}

ordered_json to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }
ordered_json to_json(const CVec& v) { return vector_json(v); }
ordered_json to_json(const CRow& v) { return vector_json(v); }
ordered_json to_json(const CMat& m) { return matrix_json(m); }
ordered_json to_json(const Eigen::MatrixXcd& m) { return matrix_json(m); }

ordered_json to_json(const FlagPoint& z) {
    return ordered_json{{"kind", "point"}, {"vector", to_json(z.vec())}};
}

ordered_json to_json(const Cycle& c) {
    return ordered_json{{"kind", "cycle"}, {"dual", to_json(c.dual)}};
}

ordered_json to_json(const OptimizerReport& r) {
    return ordered_json{{"evaluations", r.evaluations},
                        {"iterations", r.iterations},
                        {"final_step", r.final_step},
                        {"stalled", r.stalled}};
}

ordered_json to_json(const ExhaustionSample& s) {
    ordered_json j;
    j["subject"] = std::visit([](const auto& x) { return to_json(x); }, s.subject);
    j["value"] = s.value;
    j["argmax_slice"] = s.argmax_slice;
    j["argmax_k"] = s.argmax_k.group_dim() > 0 ? to_json(s.argmax_k.matrix()) : ordered_json(nullptr);
    j["arginf_cycle"] = s.arginf_cycle ? to_json(*s.arginf_cycle) : ordered_json(nullptr);
    j["arginf_fiber_coords"] = s.arginf_fiber_coords ? to_json(*s.arginf_fiber_coords) : ordered_json(nullptr);
    j["optimizer"] = to_json(s.report);
    return j;
}

ordered_json to_json(const LeviReport& r) {
    ordered_json j;
    if (const auto* z = std::get_if<FlagPoint>(&r.point)) j["point"] = to_json(*z);
    else if (const auto* c = std::get_if<Cycle>(&r.point)) j["point"] = to_json(*c);
    else j["point"] = nullptr;
    j["chart_id"] = r.chart_id;
    j["value"] = r.value;
    j["levi_matrix"] = to_json(r.levi_matrix);
    j["eigenvalues"] = r.eigenvalues;
    j["n_pos"] = r.n_pos;
    j["n_zero"] = r.n_zero;
    j["n_neg"] = r.n_neg;
    j["fd_step"] = r.fd_step;
    j["verdict"] = verdict_name(r.verdict);
    return j;
}

ordered_json to_json(const MinorantDatum& m) {
    ordered_json j;
    j["touch_point"] = to_json(m.touch_point);
    j["description"] = m.description;
    j["active_slice"] = m.active_slice;
    j["active_k"] = m.active_k.group_dim() > 0 ? to_json(m.active_k.matrix()) : ordered_json(nullptr);
    j["touch_cycle"] = to_json(m.touch_cycle);
    j["touch_gap"] = m.touch_gap;
    j["min_gap"] = m.min_gap;
    j["probe_radius"] = m.probe_radius;
    j["probes"] = m.probes;
    j["halvings"] = m.halvings;
    j["reoptimized"] = m.reoptimized;
    j["soundness_min_gap"] = m.soundness_min_gap;
    j["sound"] = m.sound;
    return j;
}

ordered_json to_json(const CheckResult& c) {
    ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["measured"] = c.measured;
    j["relation"] = c.relation;
    j["tolerance"] = c.tolerance;
    j["count"] = c.count;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

ordered_json to_json(const SuiteResult& s) {
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : s.checks) checks.push_back(to_json(c));
    return ordered_json{{"name", s.name}, {"passed", s.passed()}, {"checks", std::move(checks)}};
}

ordered_json to_json(const VerificationReport& r) {
    ordered_json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    ordered_json suites = ordered_json::array();
    for (const SuiteResult& s : r.suites) suites.push_back(to_json(s));
    j["suites"] = std::move(suites);
    j["environment"] = environment_stamp();
    if (r.elapsed_seconds) j["timing"] = ordered_json{{"elapsed_seconds", *r.elapsed_seconds}};
    return j;
}

std::string summary_text(const VerificationReport& r) {
    std::string out;
    char line[512];
    for (const SuiteResult& s : r.suites) {
        for (const CheckResult& c : s.checks) {
            std::snprintf(line, sizeof line, "%s  %-11s %-24s measured %.6g %s %.6g  (n=%ld)%s%s\n",
                          c.passed ? "PASS" : "FAIL", s.name.c_str(), c.name.c_str(), c.measured, c.relation.c_str(),
                          c.tolerance, c.count, c.detail.empty() ? "" : "  ", c.detail.c_str());
            out += line;
        }
    }
    out += r.passed() ? "verification passed\n" : "verification FAILED\n";
    return out;
}

}  // namespace cyclelab
