#include "cyclelab/levi_analysis.hpp"

#include <cmath>
#include <numbers>

#include "cyclelab/error.hpp"
#include "cyclelab/rng.hpp"

namespace cyclelab {

namespace {

double checked_eval(const ChartField& f, const CVec& c, ErrorCode code) {
    double v;
    try {
        v = f(c);
    } catch (const CycleLabError& e) {
        fail(code, std::string("evaluation failed: ") + e.what());
    }
    if (!std::isfinite(v)) fail(code, "non-finite value");
    return v;
}

Eigen::MatrixXcd raw_levi(const ChartField& f, const CVec& p, double h) {
    const int m = static_cast<int>(p.size());
    const int nr = 2 * m;
    auto shifted = [&](int i, double di, int j, double dj) {
        CVec c = p;
        auto bump = [&](int k, double d) {
            if (k < 0) return;
            c(k / 2) += (k % 2 == 0) ? cplx(d, 0.0) : cplx(0.0, d);
        };
        bump(i, di);
        bump(j, dj);
        return checked_eval(f, c, ErrorCode::StencilFailure);
    };
    const double f0 = shifted(-1, 0, -1, 0);
    Eigen::MatrixXd hess(nr, nr);
    for (int i = 0; i < nr; ++i) {
        hess(i, i) = (shifted(i, h, -1, 0) - 2.0 * f0 + shifted(i, -h, -1, 0)) / (h * h);
        for (int j = i + 1; j < nr; ++j) {
            const double v = (shifted(i, h, j, h) - shifted(i, h, j, -h) - shifted(i, -h, j, h) + shifted(i, -h, j, -h)) /
                             (4.0 * h * h);
            hess(i, j) = v;
            hess(j, i) = v;
        }
    }
    // Real index 2a is Re c_a, 2a + 1 is Im c_a.
    Eigen::MatrixXcd l(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            l(a, b) = 0.25 * cplx(hess(2 * a, 2 * b) + hess(2 * a + 1, 2 * b + 1),
                                  hess(2 * a, 2 * b + 1) - hess(2 * a + 1, 2 * b));
    return l;
}

CVec random_ball_point(Rng& rng, int m, double radius) {
    CVec d = rng.complex_normal_vector(m);
    d /= d.norm();
    return d * (radius * std::pow(rng.uniform(), 1.0 / (2.0 * m)));
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::psh_ok: return "psh_ok";
        case Verdict::q_convex_ok: return "q_convex_ok";
        case Verdict::fail: return "fail";
    }
    return "fail";
}

Eigen::MatrixXcd levi_matrix_fd(const ChartField& f, const CVec& p, double h, bool richardson) {
    if (!(h > 0.0)) fail(ErrorCode::InvalidInput, "fd step must be positive");
    Eigen::MatrixXcd l = raw_levi(f, p, h);
    if (richardson) l = (4.0 * raw_levi(f, p, 0.5 * h) - l) / 3.0;
    return 0.5 * (l + l.adjoint());
}

Signature eig_signature(const Eigen::MatrixXcd& m, double zero_band) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidMatrix, "matrix is not square");
    if (m.size() > 0 && (m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        fail(ErrorCode::InvalidMatrix, "matrix is not Hermitian");
    Signature s;
    if (m.size() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double e = es.eigenvalues()(i);
        if (std::abs(e) <= zero_band) ++s.n_zero;
        else if (e > 0) ++s.n_pos;
        else ++s.n_neg;
    }
    return s;
}

LeviReport levi_form_fd(const ChartField& f, const CVec& p, double h, double zero_band) {
    LeviReport r;
    r.value = checked_eval(f, p, ErrorCode::StencilFailure);
    r.levi_matrix = levi_matrix_fd(f, p, h, true);
    r.fd_step = h;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.levi_matrix, Eigen::EigenvaluesOnly);
    for (int i = 0; i < es.eigenvalues().size(); ++i) r.eigenvalues.push_back(es.eigenvalues()(i));
    const Signature s = eig_signature(r.levi_matrix, zero_band);
    r.n_pos = s.n_pos;
    r.n_zero = s.n_zero;
    r.n_neg = s.n_neg;
    r.verdict = (s.n_pos == static_cast<int>(p.size())) ? Verdict::psh_ok : Verdict::fail;
    return r;
}

SubmeanResult submeanvalue_measure(const ChartField& f, const CVec& centre, double radius, const CVec& direction,
                                   int samples, double tolerance) {
    if (samples < 1) fail(ErrorCode::InvalidInput, "sample count must be positive");
    SubmeanResult res;
    res.centre_value = checked_eval(f, centre, ErrorCode::DiscOutOfDomain);
    double sum = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        const CVec c = centre + radius * std::polar(1.0, t) * direction;
        sum += checked_eval(f, c, ErrorCode::DiscOutOfDomain);
    }
    res.circle_mean = sum / samples;
    res.passed = res.centre_value <= res.circle_mean + tolerance;
    return res;
}

bool submeanvalue_test(const ChartField& f, const CVec& centre, double radius, const CVec& direction, int samples,
                       double tolerance) {
    return submeanvalue_measure(f, centre, radius, direction, samples, tolerance).passed;
}

Certificate q_pseudoconvex_certificate(const FlagPoint& y, const ExhaustionEngine& engine,
                                       const CertificateSettings& cs) {
    const ScenarioConfig& sc = engine.scenario();
    if (!in_domain(y, sc)) fail(ErrorCode::NotInDomain, "point is not in D");

    OptimizerSettings refined_opt = cs.refined;
    if (refined_opt.k0_resolution <= 0) refined_opt.k0_resolution = engine.settings().k0_resolution + 1;
    if (refined_opt.k0_extra < 0) refined_opt.k0_extra = 2 * engine.settings().k0_extra;
    const ExhaustionEngine refined(sc, refined_opt);

    const ExhaustionSample base = engine.r_d(y);
    const int j = base.argmax_slice;
    const CMat k = base.argmax_k.matrix();
    const ChartMap ch = chart(y, sc);
    const int m = ch.dim();

    struct Pair {
        double r;
        double h;
    };
    auto evaluate = [&](const CVec& c) -> Pair {
        const ExhaustionSample s = engine.r_d(ch.point(c));
        return {s.value, engine.branch(j, k, s.arginf_cycle->dual)};
    };

    Certificate cert;
    MinorantDatum& md = cert.minorant;
    md.touch_point = y;
    md.active_slice = j;
    md.active_k = base.argmax_k;
    md.touch_cycle = *base.arginf_cycle;
    md.description = "r_{k(S)} o pi_{k(Sigma_" + std::to_string(j) + ")} along the minimizing cycle section";
    md.touch_gap = base.value - engine.branch(j, k, base.arginf_cycle->dual);

    Rng rng(derive_seed(cs.seed, 0x6365));
    double radius = cs.probe_radius;
    for (int attempt = 0;; ++attempt) {
        md.min_gap = md.touch_gap;
        md.reoptimized = 0;
        bool violated = false;
        for (int i = 0; i < cs.probes && !violated; ++i) {
            const CVec c = random_ball_point(rng, m, radius);
            const Pair p = evaluate(c);
            double gap = p.r - p.h;
            if (gap < -cs.gap_tolerance) {
                // Distinguish an optimizer miss in r_D from a neighbourhood that is too large.
                gap = refined.r_d(ch.point(c)).value - p.h;
                ++md.reoptimized;
                if (gap < -cs.gap_tolerance) violated = true;
            }
            md.min_gap = std::min(md.min_gap, gap);
        }
        if (!violated) break;
        if (attempt >= cs.max_halvings)
            fail(ErrorCode::MinorantFailure, "minorant violated (gap " + std::to_string(md.min_gap) + ") after " +
                                                 std::to_string(attempt) + " radius halvings");
        radius *= 0.5;
        ++md.halvings;
    }
    md.probe_radius = radius;
    md.probes = cs.probes;

    Rng fresh(derive_seed(cs.seed, 0x736f));
    md.soundness_min_gap = std::numeric_limits<double>::infinity();
    md.sound = true;
    for (int i = 0; i < cs.soundness_probes; ++i) {
        const CVec c = random_ball_point(fresh, m, radius);
        const double h = evaluate(c).h;
        const double r = refined.r_d(ch.point(c)).value;
        md.soundness_min_gap = std::min(md.soundness_min_gap, r - h);
        if (h > r + cs.soundness_tolerance) md.sound = false;
    }

    const ChartField htilde = [&](const CVec& c) { return evaluate(c).h; };
    cert.levi = levi_form_fd(htilde, CVec::Zero(m), sc.tol.fd_step, sc.tol.zero_band);
    cert.levi.point = y;
    cert.levi.chart_id = "Z@pivot" + std::to_string(ch.pivot);
    cert.levi.value = base.value;
    const bool ok = cert.levi.n_pos >= sc.n_Z - sc.q && md.min_gap >= -cs.gap_tolerance &&
                    std::abs(md.touch_gap) < cs.gap_tolerance && md.sound;
    cert.levi.verdict = ok ? Verdict::q_convex_ok : Verdict::fail;
    return cert;
}

Certificate q_pseudoconvex_certificate(const FlagPoint& y, const ScenarioConfig& sc, const OptimizerSettings& opt,
                                       const CertificateSettings& cs) {
    return q_pseudoconvex_certificate(y, ExhaustionEngine(sc, opt), cs);
}

}  // namespace cyclelab
