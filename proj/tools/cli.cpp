#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclelab/error.hpp"
#include "cyclelab/parallel.hpp"
#include "cyclelab/report_json.hpp"
#include "cyclelab/scenarios.hpp"

namespace cyclelab::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

/// Raised for malformed flags or configuration files; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CertifyOptions {
    int points = 10;
    CertificateSettings settings;
};

struct RunConfig {
    std::string command;
    std::string scenario = "su11";
    std::optional<ScenarioParams> custom;
    Target target = Target::r_md;
    GridRegion grid{-0.9, 0.9, 41, -1};
    OptimizerSettings optimizer;
    Tolerances tol;
    std::uint64_t seed = 42;
    std::string out;
    std::string format = "csv";
    std::string suite = "all";
    bool full = false;
    bool timing = false;
    bool levi = true;
    CertifyOptions certify;
};

GridRegion parse_grid(const std::string& text) {
    GridRegion g;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.min, &g.max, &g.n, &tail) != 3)
        throw UsageError("grid must be min:max:n, got '" + text + "'");
    if (g.n < 1) throw UsageError("grid resolution must be at least 1");
    if (!(g.max >= g.min)) throw UsageError("grid max must not be below min");
    return g;
}

template <class T>
void read_field(const json& obj, const char* key, T& dst) {
    if (!obj.contains(key)) return;
    try {
        dst = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("config field '") + key + "': " + e.what());
    }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw UsageError("unknown key '" + key + "' in " + where);
    }
}

cplx parse_complex(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
    throw UsageError("complex numbers are written as x or [re, im]");
}

CMat parse_matrix(const json& rows) {
    if (!rows.is_array() || rows.empty() || rows.size() > static_cast<std::size_t>(kMaxDim))
        throw UsageError("matrices are arrays of at most 4 rows");
    const int n = static_cast<int>(rows.size());
    CMat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) throw UsageError("matrix must be square");
        for (int j = 0; j < n; ++j) m(i, j) = parse_complex(rows[i][j]);
    }
    return m;
}

CVec parse_vector(const json& v) {
    if (!v.is_array() || v.empty() || v.size() > static_cast<std::size_t>(kMaxDim))
        throw UsageError("vectors are arrays of at most 4 entries");
    CVec out(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = parse_complex(v[i]);
    return out;
}

void apply_tolerances(const json& t, Tolerances& tol) {
    reject_unknown(t,
                   {"det", "membership", "sign_margin", "rank", "intersection", "zero_band", "fd_step", "boundary",
                    "probe_radius"},
                   "tolerances");
    read_field(t, "det", tol.det);
    read_field(t, "membership", tol.membership);
    read_field(t, "sign_margin", tol.sign_margin);
    read_field(t, "rank", tol.rank);
    read_field(t, "intersection", tol.intersection);
    read_field(t, "zero_band", tol.zero_band);
    read_field(t, "fd_step", tol.fd_step);
    read_field(t, "boundary", tol.boundary);
    read_field(t, "probe_radius", tol.probe_radius);
}

void apply_optimizer(const json& o, OptimizerSettings& opt) {
    reject_unknown(o,
                   {"k0_resolution", "k0_extra", "ascent_step_tol", "ascent_shrink", "ascent_starts",
                    "fiber_resolution", "fiber_radius", "descent_step_tol", "descent_shrink", "max_evaluations"},
                   "optimizer");
    read_field(o, "k0_resolution", opt.k0_resolution);
    read_field(o, "k0_extra", opt.k0_extra);
    read_field(o, "ascent_step_tol", opt.ascent_step_tol);
    read_field(o, "ascent_shrink", opt.ascent_shrink);
    read_field(o, "ascent_starts", opt.ascent_starts);
    read_field(o, "fiber_resolution", opt.fiber_resolution);
    read_field(o, "fiber_radius", opt.fiber_radius);
    read_field(o, "descent_step_tol", opt.descent_step_tol);
    read_field(o, "descent_shrink", opt.descent_shrink);
    read_field(o, "max_evaluations", opt.max_evaluations);
}

ScenarioParams parse_custom(const json& s) {
    reject_unknown(s, {"name", "form", "iwasawa_frame", "base_point", "domain_sign", "k0_resolution", "k0_extra"},
                   "custom_scenario");
    for (const char* key : {"form", "iwasawa_frame", "base_point"})
        if (!s.contains(key)) throw UsageError(std::string("custom_scenario needs '") + key + "'");
    ScenarioParams p;
    p.name = "custom";
    read_field(s, "name", p.name);
    p.form = parse_matrix(s.at("form"));
    p.iwasawa_frame = parse_matrix(s.at("iwasawa_frame"));
    p.base_point = parse_vector(s.at("base_point"));
    read_field(s, "domain_sign", p.domain_sign);
    read_field(s, "k0_resolution", p.k0_resolution);
    read_field(s, "k0_extra", p.k0_extra);
    return p;
}

void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must contain a JSON object");
    reject_unknown(j,
                   {"scenario", "custom_scenario", "target", "grid", "seed", "resolution_k0", "out", "format", "suite",
                    "full", "levi", "points", "optimizer", "tolerances", "certificate"},
                   "config file");
    // Flags given on the command line win over the file.
    auto from_file = [&](const char* flag) {
        const CLI::Option* o = app.get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    if (j.contains("scenario") && from_file("--scenario")) read_field(j, "scenario", cfg.scenario);
    if (j.contains("custom_scenario") && from_file("--scenario")) cfg.custom = parse_custom(j.at("custom_scenario"));
    if (j.contains("target") && from_file("--target")) {
        std::string t;
        read_field(j, "target", t);
        try {
            cfg.target = parse_target(t);
        } catch (const CycleLabError&) {
            throw UsageError("unknown target '" + t + "'");
        }
    }
    if (j.contains("grid") && from_file("--grid")) {
        const json& g = j.at("grid");
        if (g.is_string()) {
            cfg.grid = parse_grid(g.get<std::string>());
        } else if (g.is_object()) {
            reject_unknown(g, {"min", "max", "n", "axis"}, "grid");
            read_field(g, "min", cfg.grid.min);
            read_field(g, "max", cfg.grid.max);
            read_field(g, "n", cfg.grid.n);
            read_field(g, "axis", cfg.grid.axis);
            if (cfg.grid.n < 1) throw UsageError("grid resolution must be at least 1");
        } else {
            throw UsageError("grid must be a string min:max:n or an object");
        }
    }
    if (from_file("--seed")) read_field(j, "seed", cfg.seed);
    if (j.contains("optimizer")) apply_optimizer(j.at("optimizer"), cfg.optimizer);
    if (from_file("--resolution-k0")) read_field(j, "resolution_k0", cfg.optimizer.k0_resolution);
    if (from_file("--out")) read_field(j, "out", cfg.out);
    if (from_file("--format")) read_field(j, "format", cfg.format);
    if (from_file("--suite")) read_field(j, "suite", cfg.suite);
    if (from_file("--full")) read_field(j, "full", cfg.full);
    if (from_file("--no-levi")) read_field(j, "levi", cfg.levi);
    if (from_file("--points")) read_field(j, "points", cfg.certify.points);
    if (j.contains("tolerances")) apply_tolerances(j.at("tolerances"), cfg.tol);
    if (j.contains("certificate")) {
        const json& c = j.at("certificate");
        reject_unknown(c, {"probe_radius", "probes", "max_halvings", "soundness_probes"}, "certificate");
        read_field(c, "probe_radius", cfg.certify.settings.probe_radius);
        read_field(c, "probes", cfg.certify.settings.probes);
        read_field(c, "max_halvings", cfg.certify.settings.max_halvings);
        read_field(c, "soundness_probes", cfg.certify.settings.soundness_probes);
    }
    if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "text")
        throw UsageError("format must be csv, json or text");
}

ScenarioConfig load_scenario(const RunConfig& cfg) {
    if (cfg.custom) {
        ScenarioParams p = *cfg.custom;
        p.tol = cfg.tol;
        return make_scenario(p);
    }
    const auto names = scenario_names();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
        throw UsageError("unknown scenario '" + cfg.scenario + "'");
    return scenario_by_name(cfg.scenario, cfg.tol);
}

/// Writes to the --out file, or to stdout when no file is given.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) fail(ErrorCode::InvalidInput, "cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    bool to_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
};

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string text(cplx z) {
    auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
    char buf[64];
    const double re = clean(z.real());
    const double im = clean(z.imag());
    if (im == 0.0) std::snprintf(buf, sizeof buf, "%.6g", re);
    else if (re == 0.0) std::snprintf(buf, sizeof buf, "%.6gi", im);
    else std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
    return buf;
}

std::string text(const CRow& v) {
    std::string out = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + text(v(i));
    return out + ")";
}

int run_eval(const RunConfig& cfg) {
    const ScenarioConfig sc = load_scenario(cfg);
    const ExhaustionEngine engine(sc, cfg.optimizer);
    const int threads = worker_count();
    std::vector<GridPoint> points = evaluate_grid(cfg.grid, cfg.target, engine, threads);

    const TargetChart tc(engine, cfg.target);
    const int axis = cfg.grid.axis < 0 ? tc.dim() - 1 : cfg.grid.axis;
    std::vector<std::optional<LeviReport>> levi(points.size());
    if (cfg.levi) {
        const ChartField f = [&tc](const CVec& c) { return tc.at(c).value; };
        parallel_for(points.size(), threads, [&](std::size_t i) {
            if (!points[i].ok) return;
            CVec c = CVec::Zero(tc.dim());
            c(axis) = cplx(points[i].re, points[i].im);
            try {
                LeviReport r = levi_form_fd(f, c, sc.tol.fd_step, sc.tol.zero_band);
                r.point = points[i].sample.subject.index() == 0
                              ? decltype(r.point)(std::get<Cycle>(points[i].sample.subject))
                              : decltype(r.point)(std::get<FlagPoint>(points[i].sample.subject));
                r.chart_id = target_name(cfg.target) + ":" + std::to_string(axis);
                levi[i] = std::move(r);
            } catch (const CycleLabError&) {
            }
        });
    }

    auto n_pos = [&](std::size_t i) { return levi[i] ? levi[i]->n_pos : -1; };
    Output out(cfg.out);
    std::ostream& os = out.stream();
    if (cfg.format == "csv") {
        os << "re,im,value,argmax_slice,n_pos\n";
        for (std::size_t i = 0; i < points.size(); ++i) {
            const GridPoint& p = points[i];
            os << number(p.re) << ',' << number(p.im) << ',' << (p.ok ? number(p.sample.value) : "nan") << ','
               << (p.ok ? p.sample.argmax_slice : -1) << ',' << n_pos(i) << '\n';
        }
    } else {
        ordered_json j;
        j["scenario"] = sc.name;
        j["target"] = target_name(cfg.target);
        j["chart_axis"] = axis;
        j["chart_dim"] = tc.dim();
        j["grid"] = ordered_json{{"min", cfg.grid.min}, {"max", cfg.grid.max}, {"n", cfg.grid.n}};
        j["seed"] = cfg.seed;
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const GridPoint& p = points[i];
            ordered_json e;
            e["re"] = p.re;
            e["im"] = p.im;
            e["ok"] = p.ok;
            e["value"] = p.ok ? ordered_json(p.sample.value) : ordered_json(nullptr);
            e["argmax_slice"] = p.ok ? p.sample.argmax_slice : -1;
            e["n_pos"] = n_pos(i);
            if (p.ok) e["sample"] = to_json(p.sample);
            if (levi[i]) e["levi"] = to_json(*levi[i]);
            else e["error"] = p.error;
            arr.push_back(std::move(e));
        }
        j["points"] = std::move(arr);
        os << j.dump(2) << '\n';
    }
    std::size_t failed = 0;
    for (const GridPoint& p : points) failed += p.ok ? 0 : 1;
    if (failed > 0) std::cerr << failed << " of " << points.size() << " grid points failed\n";
    return 0;
}

int run_verify(const RunConfig& cfg) {
    const ScenarioConfig sc = load_scenario(cfg);
    const auto start = std::chrono::steady_clock::now();
    OptimizerSettings opt = cfg.optimizer;
    const ExhaustionEngine engine(sc, opt);
    VerificationReport report;
    report.scenario = sc.name;
    report.seed = cfg.seed;
    const std::vector<std::string> names = suite_names();
    if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw UsageError("unknown suite '" + cfg.suite + "'");
    report.suites = run_suites(cfg.suite, engine, cfg.full ? full_counts() : quick_counts(), cfg.seed, worker_count());
    if (cfg.timing)
        report.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Output out(cfg.out);
    out.stream() << to_json(report).dump(2) << '\n';
    (out.to_file() ? std::cout : std::cerr) << summary_text(report);
    return report.passed() ? 0 : 1;
}

int run_certify(const RunConfig& cfg) {
    const ScenarioConfig sc = load_scenario(cfg);
    const ExhaustionEngine engine(sc, cfg.optimizer);
    Rng rng(derive_seed(cfg.seed, 77));
    std::vector<FlagPoint> ys;
    for (int i = 0; i < cfg.certify.points; ++i) ys.push_back(random_certificate_point(sc, rng));

    std::vector<ordered_json> records(ys.size());
    std::vector<bool> ok(ys.size(), false);
    parallel_for(ys.size(), worker_count(), [&](std::size_t i) {
        CertificateSettings cs = cfg.certify.settings;
        cs.seed = derive_seed(cfg.seed, 3000 + i);
        ordered_json rec;
        rec["index"] = i;
        try {
            const Certificate cert = q_pseudoconvex_certificate(ys[i], engine, cs);
            rec["levi"] = to_json(cert.levi);
            rec["minorant"] = to_json(cert.minorant);
            ok[i] = cert.levi.verdict != Verdict::fail;
        } catch (const CycleLabError& e) {
            rec["point"] = to_json(ys[i]);
            rec["error"] = ordered_json{{"code", std::string(error_name(e.code()))}, {"message", e.what()}};
        }
        records[i] = std::move(rec);
    });
    Output out(cfg.out);
    for (const ordered_json& r : records) out.stream() << r.dump() << '\n';
    const auto passed = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), true));
    std::cerr << passed << " of " << ys.size() << " points certified\n";
    return passed == ys.size() ? 0 : 1;
}

int run_info(const RunConfig& cfg) {
    const ScenarioConfig sc = load_scenario(cfg);
    const ExhaustionEngine engine(sc, cfg.optimizer);
    ordered_json j;
    j["scenario"] = sc.name;
    j["n"] = sc.dim();
    j["form"] = to_json(sc.rf.form);
    j["domain_sign"] = sc.domain_sign;
    j["base_point"] = to_json(sc.base_point);
    j["n_Z"] = sc.n_Z;
    j["q"] = sc.q;
    j["m"] = engine.slices().size();
    j["base_cycle"] = to_json(base_cycle(sc));
    j["real_form_dims"] = ordered_json{{"g0", sc.rf.g0.size()},
                                       {"k0", sc.rf.k0.size()},
                                       {"s0", sc.rf.s0.size()},
                                       {"a0", sc.rf.a0.size()},
                                       {"n0", sc.rf.n0.size()}};
    const SchubertDatum& s = engine.schubert();
    ordered_json sj;
    sj["dim"] = s.dim_S;
    sj["span"] = to_json(s.span);
    sj["boundary_span"] = to_json(s.boundary_span);
    sj["dual"] = s.dual ? to_json(*s.dual) : ordered_json(nullptr);
    sj["family_size"] = sc.schubert_family_size;
    j["schubert"] = std::move(sj);
    ordered_json slices = ordered_json::array();
    for (const SliceDatum& sl : engine.slices()) slices.push_back(to_json(sl.base));
    j["slice_points"] = std::move(slices);
    j["section"] = ordered_json{{"coefficients", to_json(engine.section().coefficients)},
                                {"weight", engine.section().weight_tag}};
    j["k0_sample_size"] = engine.k0_sample_size();
    Output out(cfg.out);
    if (cfg.format == "json") {
        out.stream() << j.dump(2) << '\n';
        return 0;
    }
    std::ostream& os = out.stream();
    os << "scenario        " << sc.name << '\n'
       << "ambient         P^" << sc.dim() - 1 << ", form of signature (" << sc.rf.p << ", " << sc.rf.q_form << "), D = "
       << (sc.domain_sign > 0 ? "positive" : "negative") << " lines\n"
       << "base point z0   " << text(sc.base_point.vec().transpose()) << '\n'
       << "n_Z             " << sc.n_Z << '\n'
       << "q               " << sc.q << '\n'
       << "m               " << engine.slices().size() << '\n'
       << "base cycle      dual " << text(base_cycle(sc).dual) << '\n'
       << "dims            g0 " << sc.rf.g0.size() << ", k0 " << sc.rf.k0.size() << ", s0 " << sc.rf.s0.size()
       << ", a0 " << sc.rf.a0.size() << ", n0 " << sc.rf.n0.size() << '\n'
       << "schubert S0     dim " << s.dim_S;
    if (s.dual) os << ", dual " << text(*s.dual);
    os << '\n';
    for (const SliceDatum& sl : engine.slices()) os << "slice point     " << text(sl.base.vec().transpose()) << '\n';
    os << "section         " << text(engine.section().coefficients) << " (" << engine.section().weight_tag << ")\n"
       << "K0 sample       " << engine.k0_sample_size() << " points\n";
    return 0;
}

void emit_error(const char* kind, const std::string& code, const std::string& message) {
    ordered_json e{{"error", kind}, {"code", code}, {"message", message}};
    std::cerr << e.dump() << '\n';
}

}  // namespace

int run(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Cycle-space exhaustions of flag domains: evaluation, verification and certificates"};
    app.require_subcommand(1);
    std::string config_path;
    std::string target_text;
    std::string grid_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", cfg.scenario, "built-in scenario")->check(CLI::IsMember(scenario_names()));
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--resolution-k0", cfg.optimizer.k0_resolution, "coarse K0 grid points per coordinate")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--out", cfg.out, "output file (default: stdout)");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a target function on a chart grid");
    add_common(eval);
    eval->add_option("--target", target_text, "r_s, r_md or r_d")->check(CLI::IsMember({"r_s", "r_md", "r_d"}));
    eval->add_option("--grid", grid_text, "min:max:n, an n x n grid over (re, im) of one chart coordinate");
    eval->add_option("--axis", cfg.grid.axis, "chart coordinate varied by the grid (default: last)");
    eval->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    eval->add_flag("--no-levi", "skip the Levi signature column (n_pos = -1)");

    CLI::App* verify = app.add_subcommand("verify", "run the property suites and write a report");
    add_common(verify);
    verify->add_option("--suite", cfg.suite, "all, invariance, psh, exhaustion, incidence or levi")
        ->check(CLI::IsMember({"all", "invariance", "psh", "exhaustion", "incidence", "levi"}));
    verify->add_flag("--full", cfg.full, "use the full sample counts");
    verify->add_flag("--timing", cfg.timing, "record elapsed time in the report");

    CLI::App* certify = app.add_subcommand("certify", "q-pseudoconvexity certificates at seeded points of D");
    add_common(certify);
    certify->add_option("--points", cfg.certify.points, "number of points")->check(CLI::NonNegativeNumber);

    CLI::App* info = app.add_subcommand("info", "print the derived scenario data");
    add_common(info);
    info->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    try {
        if (!config_path.empty()) apply_config_file(config_path, cfg, *sub);
        if (!target_text.empty()) cfg.target = parse_target(target_text);
        if (!grid_text.empty()) {
            const int axis = cfg.grid.axis;
            cfg.grid = parse_grid(grid_text);
            cfg.grid.axis = axis;
        }
        if (const CLI::Option* o = sub->get_option_no_throw("--no-levi"); o && o->count() > 0) cfg.levi = false;
    } catch (const UsageError& e) {
        emit_error("usage", "InvalidInput", e.what());
        return 2;
    }

    try {
        if (cfg.command == "eval") return run_eval(cfg);
        if (cfg.command == "verify") return run_verify(cfg);
        if (cfg.command == "certify") return run_certify(cfg);
        return run_info(cfg);
    } catch (const UsageError& e) {
        emit_error("usage", "InvalidInput", e.what());
        return 2;
    } catch (const CycleLabError& e) {
        emit_error("runtime", std::string(error_name(e.code())), e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("runtime", "Internal", e.what());
        return 1;
    }
}

}  // namespace cyclelab::cli
