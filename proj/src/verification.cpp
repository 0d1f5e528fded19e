#include "cyclelab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cyclelab/error.hpp"
#include "cyclelab/parallel.hpp"

namespace cyclelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Paths toward the boundary stop at this distance (normalized form margin), i.e. machine precision.
constexpr double kPathEnd = 128.0 * std::numeric_limits<double>::epsilon();

CheckResult make_check(std::string name, double measured, double tolerance, std::string relation, long count) {
    CheckResult c;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tolerance;
    c.relation = std::move(relation);
    c.count = count;
    if (c.relation == "<") c.passed = measured < tolerance;
    else if (c.relation == "<=") c.passed = measured <= tolerance;
    else if (c.relation == ">") c.passed = measured > tolerance;
    else c.passed = measured >= tolerance;
    return c;
}

CVec unit_direction(Rng& rng, int dim) {
    CVec d = rng.complex_normal_vector(dim);
    return d / d.norm();
}

CMat unit_s0(const RealFormSpec& rf, Rng& rng) {
    CMat x = random_algebra_element(rf.s0, rng, 1.0);
    return x / x.norm();
}

ChartField chart_field(const TargetChart& tc) {
    return [&tc](const CVec& c) { return tc.at(c).value; };
}

struct PathOutcome {
    double peak = -kInf;
    bool monotone_tail = false;
    std::size_t length = 0;
    std::size_t last_decrease = 0;
};

/// A path is eventually monotone when its last strict decrease happens before the values pass 30.
PathOutcome assess_path(const std::vector<double>& values) {
    PathOutcome out;
    if (values.empty()) return out;
    std::size_t tail = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1]) tail = i;
        out.peak = std::max(out.peak, values[i]);
    }
    out.peak = std::max(out.peak, values.front());
    out.monotone_tail = values[tail] < 30.0 && values.back() > 30.0;
    out.length = values.size();
    out.last_decrease = tail;
    return out;
}

}  // namespace

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

SuiteCounts full_counts() { return {}; }

SuiteCounts quick_counts() {
    SuiteCounts c;
    c.closed_form = 50;
    c.translation = 20;
    c.invariance = 20;
    c.metric = 100;
    c.round_trip = 100;
    c.discs = 20;
    c.disc_samples = 32;
    c.divergence_paths = 3;
    c.degeneration_grid = 11;
    c.incidence = 20;
    c.infimum = 4;
    c.refinement = 4;
    c.psh_points = 10;
    c.certificates = 2;
    return c;
}

Cycle random_cycle_in_md(const ScenarioConfig& sc, Rng& rng, double scale) {
    return translate(random_g0(sc.rf, rng, scale), base_cycle(sc));
}

FlagPoint random_point_in_d(const ScenarioConfig& sc, Rng& rng, double scale) {
    return act(random_g0(sc.rf, rng, scale), sc.base_point);
}

FlagPoint random_certificate_point(const ScenarioConfig& sc, Rng& rng) {
    if (sc.q == 0 && sc.dim() == 2) {
        const ChartMap ch = chart(sc.base_point, sc);
        const double r = 0.9 * std::sqrt(rng.uniform());
        const double t = rng.uniform(0.0, 2.0 * M_PI);
        CVec c(1);
        c(0) = std::polar(r, t);
        return ch.point(c);
    }
    for (;;) {
        const CVec v = rng.complex_normal_vector(sc.dim());
        const double f = sc.domain_sign * form_value(v, sc);
        if (f >= 0.05) return FlagPoint::from_vector(v);
    }
}

CheckResult check_closed_form_disc(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const TargetChart tc(e, Target::r_md);
    Rng rng(derive_seed(seed, 1));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        cplx w;
        if (i == 0) w = 0.0;
        else if (i == 1) w = 0.5;
        else w = std::polar(0.99 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * M_PI));
        CVec c(1);
        c(0) = w;
        const double a = std::abs(w);
        const double exact = -2.0 * std::log(1.0 - a) + std::log(1.0 + a * a) + std::log(2.0);
        worst = std::max(worst, std::abs(tc.at(c).value - exact));
    }
    return make_check("closed_form_r_md", worst, 1e-6, "<", count);
}

CheckResult check_translation_identity(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 2));
    double worst = 0.0;
    long evaluated = 0;
    int attempts = 0;
    while (evaluated < count * static_cast<long>(e.slices().size()) && attempts < 20 * count) {
        ++attempts;
        const Cycle c = random_cycle_in_md(sc, rng, 0.6);
        const GroupElement k = random_k0(sc.rf, rng);
        for (int j = 0; j < static_cast<int>(e.slices().size()); ++j) {
            double lhs = 0.0;
            double rhs = 0.0;
            try {
                rhs = e.branch(j, k, c);
            } catch (const CycleLabError&) {
                continue;  // k^{-1} C misses the slice component; both sides are undefined
            }
            lhs = e.translated_branch(j, k, c);
            worst = std::max(worst, std::abs(lhs - rhs));
            ++evaluated;
        }
    }
    CheckResult r = make_check("translation_identity", worst, 1e-9, "<", evaluated);
    if (evaluated < count) r.passed = false;
    return r;
}

CheckResult check_k0_invariance(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 3));
    std::vector<std::pair<Cycle, GroupElement>> pairs;
    for (int i = 0; i < count; ++i) {
        Cycle c = random_cycle_in_md(sc, rng, 0.8);
        pairs.emplace_back(std::move(c), random_k0(sc.rf, rng));
    }
    std::vector<double> diff(pairs.size());
    parallel_for(pairs.size(), worker_count(), [&](std::size_t i) {
        const auto& [c, k] = pairs[i];
        diff[i] = std::abs(e.r_md(translate(k, c)).value - e.r_md(c).value);
    });
    const double worst = diff.empty() ? 0.0 : *std::max_element(diff.begin(), diff.end());
    return make_check("k0_invariance", worst, 1e-6, "<", count);
}

CheckResult check_metric_invariance(const ScenarioConfig& sc, int count, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 4));
    const HermitianMetric m = gu_invariant_metric(sc);
    auto norm = [&](const CVec& v) { return std::sqrt(std::abs((v.adjoint() * m.gram * v)(0, 0))); };
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const GroupElement g = random_gu(sc.dim(), rng);
        const CVec v = rng.complex_normal_vector(sc.dim());
        const CVec gv = g.matrix() * v;
        worst = std::max(worst, std::abs(norm(gv) - norm(v)));
    }
    return make_check("metric_invariance", worst, 1e-10, "<", count);
}

CheckResult check_iwasawa_round_trip(const ScenarioConfig& sc, int count, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 5));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const GroupElement k = random_k0(sc.rf, rng);
        const GroupElement a = random_a0(sc.rf, rng, 1.0);
        const GroupElement n = random_n0(sc.rf, rng, 1.0);
        const GroupElement g = k * a * n;
        const IwasawaFactors f = iwasawa_decompose(g, sc.rf);
        worst = std::max({worst, max_abs(f.k.matrix() - k.matrix()), max_abs(f.a.matrix() - a.matrix()),
                          max_abs(f.n.matrix() - n.matrix()),
                          max_abs(f.k.matrix() * f.a.matrix() * f.n.matrix() - g.matrix())});
    }
    return make_check("iwasawa_round_trip", worst, 1e-9, "<", count);
}

CheckResult check_cartan_involutive(const ScenarioConfig& sc, int count, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 6));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const GroupElement g = random_g0(sc.rf, rng, 1.0);
        const GroupElement t = cartan_involution(g, sc.rf);
        const double scale = std::max(1.0, g.matrix().norm());
        worst = std::max(worst, max_abs(cartan_involution(t, sc.rf).matrix() - g.matrix()) / scale);
        if (!is_member(t, sc.rf, SubgroupTag::G0)) worst = kInf;
    }
    return make_check("cartan_involution", worst, 1e-12, "<", count);
}

CheckResult check_submeanvalue(const ExhaustionEngine& e, int discs, int samples, std::uint64_t seed) {
    const TargetChart tc(e, Target::r_md);
    const ChartField f = chart_field(tc);
    Rng rng(derive_seed(seed, 7));
    struct Disc {
        CVec centre;
        CVec direction;
        double radius;
    };
    std::vector<Disc> list;
    while (static_cast<int>(list.size()) < discs) {
        CVec c = rng.complex_normal_vector(tc.dim());
        c *= 0.7 * std::sqrt(rng.uniform()) / c.norm();
        list.push_back({c, unit_direction(rng, tc.dim()), rng.uniform(0.02, 0.2)});
    }
    std::vector<double> excess(list.size(), kInf);
    parallel_for(list.size(), worker_count(), [&](std::size_t i) {
        Disc d = list[i];
        for (int attempt = 0; attempt < 8; ++attempt, d.radius *= 0.5) {
            try {
                const SubmeanResult r = submeanvalue_measure(f, d.centre, d.radius, d.direction, samples);
                excess[i] = r.centre_value - r.circle_mean;
                return;
            } catch (const CycleLabError& err) {
                if (err.code() != ErrorCode::DiscOutOfDomain) throw;
            }
        }
    });
    const double worst = *std::max_element(excess.begin(), excess.end());
    return make_check("submeanvalue_r_md", worst, 1e-6, "<=", discs);
}

CheckResult check_divergence_md(const ExhaustionEngine& e, int paths, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 8));
    std::vector<std::pair<Cycle, CMat>> starts;
    for (int i = 0; i < paths; ++i) {
        Cycle c = random_cycle_in_md(sc, rng, 0.5);
        starts.emplace_back(std::move(c), unit_s0(sc.rf, rng));
    }
    std::vector<PathOutcome> out(starts.size());
    parallel_for(starts.size(), worker_count(), [&](std::size_t i) {
        std::vector<double> values;
        for (double s = 0.0; s <= 60.0; s += 0.25) {
            const Cycle c = translate(GroupElement::unchecked(exp_matrix(s * starts[i].second)), starts[i].first);
            if (!cycle_in_domain(c, sc) || cycle_margin(c, sc) < kPathEnd) break;
            try {
                const double v = e.r_md(c).value;
                if (!std::isfinite(v)) break;
                values.push_back(v);
            } catch (const CycleLabError&) {
                break;
            }
        }
        out[i] = assess_path(values);
    });
    double peak = kInf;
    bool monotone = true;
    std::string detail = "eventually monotone";
    for (std::size_t i = 0; i < out.size(); ++i) {
        peak = std::min(peak, out[i].peak);
        if (monotone && !out[i].monotone_tail)
            detail = "path " + std::to_string(i) + ": last decrease at step " + std::to_string(out[i].last_decrease) +
                     " of " + std::to_string(out[i].length);
        monotone = monotone && out[i].monotone_tail;
    }
    CheckResult r = make_check("divergence_r_md", peak, 30.0, ">", paths);
    r.passed = r.passed && monotone;
    r.detail = detail;
    return r;
}

CheckResult check_divergence_d(const ExhaustionEngine& e, int paths, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 9));
    std::vector<std::pair<FlagPoint, CMat>> starts;
    for (int i = 0; i < paths; ++i) {
        FlagPoint y = random_point_in_d(sc, rng, 0.5);
        starts.emplace_back(std::move(y), unit_s0(sc.rf, rng));
    }
    std::vector<PathOutcome> out(starts.size());
    parallel_for(starts.size(), worker_count(), [&](std::size_t i) {
        std::vector<double> values;
        for (double s = 0.0; s <= 60.0; s += 0.25) {
            const FlagPoint y = act(GroupElement::unchecked(exp_matrix(s * starts[i].second)), starts[i].first);
            if (!in_domain(y, sc) || sc.domain_sign * form_value(y.vec(), sc) < kPathEnd) break;
            try {
                const double v = e.r_d(y).value;
                if (!std::isfinite(v)) break;
                values.push_back(v);
            } catch (const CycleLabError&) {
                break;
            }
        }
        out[i] = assess_path(values);
    });
    double peak = kInf;
    bool monotone = true;
    std::string detail = "eventually monotone";
    for (std::size_t i = 0; i < out.size(); ++i) {
        peak = std::min(peak, out[i].peak);
        if (monotone && !out[i].monotone_tail)
            detail = "path " + std::to_string(i) + ": last decrease at step " + std::to_string(out[i].last_decrease) +
                     " of " + std::to_string(out[i].length);
        monotone = monotone && out[i].monotone_tail;
    }
    CheckResult r = make_check("divergence_r_d", peak, 30.0, ">", paths);
    r.passed = r.passed && monotone;
    r.detail = detail;
    return r;
}

CheckResult check_degeneration(const ExhaustionEngine& e, int grid) {
    const ScenarioConfig& sc = e.scenario();
    const ChartMap ch = chart(sc.base_point, sc);
    const int n = grid;
    std::vector<double> diff(static_cast<std::size_t>(n) * n, 0.0);
    parallel_for(diff.size(), worker_count(), [&](std::size_t idx) {
        auto coord = [&](int i) { return n == 1 ? 0.0 : -0.7 + 1.4 * i / (n - 1); };
        CVec c(1);
        c(0) = cplx(coord(static_cast<int>(idx % n)), coord(static_cast<int>(idx / n)));
        const FlagPoint y = ch.point(c);
        diff[idx] = std::abs(e.r_d(y).value - e.r_md(cycle_of_point(y)).value);
    });
    const double worst = *std::max_element(diff.begin(), diff.end());
    return make_check("degeneration_r_d_r_md", worst, 1e-9, "<", static_cast<long>(diff.size()));
}

CheckResult check_infimum_consistency(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 10));
    std::vector<FlagPoint> ys;
    for (int i = 0; i < count; ++i) ys.push_back(random_point_in_d(sc, rng, 0.7));
    // worst[i] = max(r_D(y) - r_MD(member)) over fiber samples, and |r_MD(arginf) - r_D(y)|.
    std::vector<double> worst(ys.size(), 0.0);
    parallel_for(ys.size(), worker_count(), [&](std::size_t i) {
        Rng local(derive_seed(seed, 1000 + i));
        const ExhaustionSample s = e.r_d(ys[i]);
        double w = std::abs(e.r_md(*s.arginf_cycle).value - s.value);
        const FiberParam fp = mu_fiber(ys[i], sc);
        for (int t = 0; t < 8 && fp.dim() > 0; ++t) {
            CVec c = local.complex_normal_vector(fp.dim());
            c *= 0.9 * std::sqrt(local.uniform()) / c.norm();
            w = std::max(w, s.value - e.r_md(fp.member(c)).value);
        }
        worst[i] = w;
    });
    const double m = worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
    return make_check("infimum_consistency", m, 1e-9, "<=", count);
}

CheckResult check_monotone_refinement(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    OptimizerSettings fine = e.settings();
    fine.k0_resolution = sc.default_k0_resolution + 1;
    fine.k0_extra = 2 * sc.default_k0_extra;
    fine.seed = derive_seed(seed, 11);
    fine.ascent_starts = e.settings().ascent_starts + 1;
    const ExhaustionEngine refined(sc, fine);
    Rng rng(derive_seed(seed, 12));
    double worst = -kInf;
    for (int i = 0; i < count; ++i) {
        const Cycle c = random_cycle_in_md(sc, rng, 0.7);
        worst = std::max(worst, e.r_md(c).value - refined.r_md(c).value);
    }
    return make_check("monotone_refinement", worst, 1e-9, "<=", count);
}

CheckResult check_branch_lower_bound(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 17));
    const CMat id = CMat::Identity(sc.dim(), sc.dim());
    double worst = -kInf;
    long evaluated = 0;
    for (int i = 0; i < count; ++i) {
        const Cycle c = random_cycle_in_md(sc, rng, 0.7);
        const double sup = e.r_md(c).value;
        for (int j = 0; j < static_cast<int>(e.slices().size()); ++j) {
            try {
                worst = std::max(worst, e.branch(j, id, c.dual) - sup);
                ++evaluated;
            } catch (const CycleLabError&) {
            }
        }
    }
    return make_check("branch_lower_bound", worst, 1e-12, "<=", evaluated);
}

CheckResult check_unique_incidence(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 13));
    std::vector<CMat> sl;
    for (int i = 0; i < sc.dim(); ++i)
        for (int j = 0; j < sc.dim(); ++j) {
            CMat x = CMat::Zero(sc.dim(), sc.dim());
            x(i, j) = 1.0;
            if (i == j) x(sc.dim() - 1, sc.dim() - 1) -= 1.0;
            if (i == j && i == sc.dim() - 1) continue;
            sl.push_back(x);
        }
    double worst = 0.0;
    long checked = 0;
    int bad = 0;
    const Cycle c0 = base_cycle(sc);
    while (checked < count) {
        CMat x = CMat::Zero(sc.dim(), sc.dim());
        for (const CMat& b : sl) x += 0.25 * rng.complex_normal() * b;
        const Cycle c = translate(GroupElement::unchecked(exp_matrix(x)), c0);
        if (!cycle_in_domain(c, sc)) continue;
        ++checked;
        for (const SliceDatum& s : e.slices()) {
            try {
                const IncidenceRecord rec = pi_sigma(s, c, sc, 16, derive_seed(seed, 100 + checked));
                if (rec.solution_count != 1) ++bad;
                worst = std::max(worst, rec.residual);
            } catch (const CycleLabError&) {
                ++bad;
            }
        }
    }
    CheckResult r = make_check("unique_incidence", worst, 1e-10, "<", checked);
    r.passed = r.passed && bad == 0;
    r.detail = std::to_string(bad) + " cycles without a unique slice point";
    return r;
}

CheckResult check_fiber_incidence(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 14));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const FlagPoint y = random_point_in_d(sc, rng, 0.8);
        const FiberParam fp = mu_fiber(y, sc);
        for (int t = 0; t < 4; ++t) {
            CVec c = CVec::Zero(fp.dim());
            if (fp.dim() > 0) {
                c = rng.complex_normal_vector(fp.dim());
                c *= 0.95 * std::sqrt(rng.uniform()) / c.norm();
            }
            const Cycle m = fp.member(c);
            worst = std::max(worst, incidence_residual(y, m));
            if (!cycle_in_domain(m, sc)) worst = kInf;
        }
    }
    return make_check("fiber_incidence", worst, 1e-10, "<", count);
}

CheckResult check_rs_strict_psh(const ExhaustionEngine& e, int count, std::uint64_t seed) {
    const TargetChart tc(e, Target::r_s);
    const ChartField f = chart_field(tc);
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 15));
    double lowest = kInf;
    for (int i = 0; i < count; ++i) {
        CVec c = rng.complex_normal_vector(tc.dim());
        c *= 2.0 * std::sqrt(rng.uniform()) / c.norm();
        const LeviReport rep = levi_form_fd(f, c, sc.tol.fd_step, sc.tol.zero_band);
        lowest = std::min(lowest, rep.eigenvalues.front());
    }
    return make_check("r_s_strict_psh", lowest, 1e-6, ">", count);
}

CheckResult check_fd_convergence() {
    const ChartField f = [](const CVec& c) { return -std::log(1.0 - std::norm(c(0))); };
    CVec p(1);
    p(0) = cplx(0.35, 0.2);
    const double r2 = std::norm(p(0));
    const double exact = 1.0 / ((1.0 - r2) * (1.0 - r2));
    const double h = 0.02;
    const double e1 = std::abs(levi_matrix_fd(f, p, h, false)(0, 0).real() - exact);
    const double e2 = std::abs(levi_matrix_fd(f, p, h / 2, false)(0, 0).real() - exact);
    return make_check("fd_convergence_factor", e1 / e2, 3.5, ">=", 1);
}

CheckResult check_certificates(const ExhaustionEngine& e, int count, std::uint64_t seed, int threads) {
    const ScenarioConfig& sc = e.scenario();
    Rng rng(derive_seed(seed, 16));
    std::vector<FlagPoint> ys;
    for (int i = 0; i < count; ++i) ys.push_back(random_certificate_point(sc, rng));
    struct Outcome {
        bool ok = false;
        double gap = -kInf;
        int n_pos = 0;
    };
    std::vector<Outcome> out(ys.size());
    parallel_for(ys.size(), threads, [&](std::size_t i) {
        CertificateSettings cs;
        cs.seed = derive_seed(seed, 2000 + i);
        try {
            const Certificate cert = q_pseudoconvex_certificate(ys[i], e, cs);
            out[i].ok = cert.levi.verdict != Verdict::fail;
            out[i].gap = cert.minorant.min_gap;
            out[i].n_pos = cert.levi.n_pos;
        } catch (const CycleLabError&) {
            out[i].ok = false;
        }
    });
    double gap = kInf;
    int n_pos = std::numeric_limits<int>::max();
    int failed = 0;
    for (const Outcome& o : out) {
        gap = std::min(gap, o.gap);
        n_pos = std::min(n_pos, o.n_pos);
        if (!o.ok) ++failed;
    }
    CheckResult r = make_check("q_convex_certificates", gap, -1e-9, ">=", count);
    r.passed = r.passed && failed == 0 && n_pos >= sc.n_Z - sc.q;
    r.detail = "min n_pos " + std::to_string(count > 0 ? n_pos : 0) + ", " + std::to_string(failed) + " failed";
    return r;
}

std::vector<std::string> suite_names() { return {"invariance", "psh", "exhaustion", "incidence", "levi"}; }

std::vector<SuiteResult> run_suites(const std::string& which, const ExhaustionEngine& e, const SuiteCounts& n,
                                    std::uint64_t seed, int threads) {
    const ScenarioConfig& sc = e.scenario();
    const bool point_cycles = sc.q == 0 && sc.dim() == 2;
    const std::vector<std::string> known = suite_names();
    std::vector<std::string> names;
    if (which == "all") names = known;
    else if (std::find(known.begin(), known.end(), which) != known.end()) names = {which};
    else fail(ErrorCode::InvalidInput, "unknown suite '" + which + "'");

    std::vector<SuiteResult> out;
    for (const std::string& name : names) {
        SuiteResult s;
        s.name = name;
        if (name == "invariance") {
            s.checks.push_back(check_translation_identity(e, n.translation, seed));
            s.checks.push_back(check_k0_invariance(e, n.invariance, seed));
            s.checks.push_back(check_metric_invariance(sc, n.metric, seed));
            s.checks.push_back(check_iwasawa_round_trip(sc, n.round_trip, seed));
            s.checks.push_back(check_cartan_involutive(sc, n.round_trip, seed));
        } else if (name == "psh") {
            s.checks.push_back(check_submeanvalue(e, n.discs, n.disc_samples, seed));
            s.checks.push_back(check_rs_strict_psh(e, n.psh_points, seed));
            s.checks.push_back(check_fd_convergence());
        } else if (name == "exhaustion") {
            if (point_cycles) s.checks.push_back(check_closed_form_disc(e, n.closed_form, seed));
            s.checks.push_back(check_divergence_md(e, n.divergence_paths, seed));
            s.checks.push_back(check_divergence_d(e, n.divergence_paths, seed));
            if (sc.q == 0) s.checks.push_back(check_degeneration(e, n.degeneration_grid));
            s.checks.push_back(check_infimum_consistency(e, n.infimum, seed));
            s.checks.push_back(check_monotone_refinement(e, n.refinement, seed));
            s.checks.push_back(check_branch_lower_bound(e, n.refinement, seed));
        } else if (name == "incidence") {
            s.checks.push_back(check_unique_incidence(e, n.incidence, seed));
            s.checks.push_back(check_fiber_incidence(e, n.incidence, seed));
        } else {
            s.checks.push_back(check_certificates(e, n.certificates, seed, threads));
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace cyclelab
