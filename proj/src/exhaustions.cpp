#include "cyclelab/exhaustions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "cyclelab/error.hpp"
#include "cyclelab/parallel.hpp"

namespace cyclelab {

namespace {

constexpr int kLevels = 64;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double improvement_floor(double f) { return 4.0 * kEps * std::max(1.0, std::abs(f)); }

}  // namespace

ExhaustionEngine::ExhaustionEngine(const ScenarioConfig& sc, OptimizerSettings opt) : sc_(sc), opt_(opt) {
    schubert_ = make_schubert(sc_, 0);
    slices_ = schubert_slices(schubert_, sc_);
    section_ = highest_weight_section(schubert_, sc_);
    metric_ = gu_invariant_metric(sc_);
    section_dual_norm_sq_ =
        (section_.coefficients * metric_.gram.inverse() * section_.coefficients.adjoint())(0, 0).real();

    if (opt_.k0_resolution <= 0) opt_.k0_resolution = sc_.default_k0_resolution;
    if (opt_.k0_extra < 0) opt_.k0_extra = sc_.default_k0_extra;
    if (opt_.ascent_starts < 1) fail(ErrorCode::InvalidInput, "ascent_starts must be >= 1");
    if (opt_.fiber_resolution < 1) fail(ErrorCode::InvalidInput, "fiber_resolution must be >= 1");
    if (!(opt_.fiber_radius > 0.0 && opt_.fiber_radius < 1.0))
        fail(ErrorCode::InvalidInput, "fiber_radius must lie in (0, 1)");
    if (!(opt_.ascent_shrink > 0.0 && opt_.ascent_shrink < 1.0) || !(opt_.descent_shrink > 0.0 && opt_.descent_shrink < 1.0))
        fail(ErrorCode::InvalidInput, "shrink factors must lie in (0, 1)");
    if (!(opt_.ascent_step_tol > 0.0) || !(opt_.descent_step_tol > 0.0))
        fail(ErrorCode::InvalidInput, "step tolerances must be positive");

    for (const auto& g : k0_sample(sc_.rf, opt_.k0_resolution, opt_.seed, opt_.k0_extra)) samples_.push_back(g.matrix());

    const double h0 = std::numbers::pi / opt_.k0_resolution;
    for (int l = 0; l < kLevels; ++l) {
        const double h = h0 * std::pow(opt_.ascent_shrink, l);
        step_sizes_.push_back(h);
        std::vector<CMat> row;
        for (const auto& x : sc_.rf.k0) {
            row.push_back(exp_matrix(h * x));
            row.push_back(exp_matrix(-h * x));
        }
        steps_.push_back(std::move(row));
    }
}

double ExhaustionEngine::branch_or_neg_inf(int slice, const CMat& k, const CRow& dual) const noexcept {
    constexpr double fail_value = -std::numeric_limits<double>::infinity();
    const SliceDatum& sl = slices_[slice];
    const CRow l = dual * k;
    const cplx a = (l * sl.base_lift)(0, 0);
    const cplx b = (l * schubert_.boundary_span.col(0))(0, 0);
    if (!(std::abs(b) > 0.0)) return fail_value;
    const CVec p = sl.base_lift - (a / b) * schubert_.boundary_span.col(0);
    const double pn = (p.adjoint() * metric_.gram * p)(0, 0).real();
    const double fv = sc_.domain_sign * (p.adjoint() * sc_.rf.form * p)(0, 0).real() / p.squaredNorm();
    if (!(fv > sc_.tol.sign_margin)) return fail_value;
    const double nsq = std::norm((section_.coefficients * p)(0, 0)) / (pn * section_dual_norm_sq_);
    if (!(nsq > sc_.tol.boundary * sc_.tol.boundary)) return fail_value;
    return -std::log(nsq);
}

double ExhaustionEngine::branch(int slice, const CMat& k, const CRow& dual) const {
    const double v = branch_or_neg_inf(slice, k, dual);
    if (!std::isfinite(v)) fail(ErrorCode::IncidenceMiss, "translated cycle has no admissible slice point");
    return v;
}

double ExhaustionEngine::branch(int slice, const GroupElement& k, const Cycle& c) const {
    return branch(slice, k.matrix(), c.dual);
}

double ExhaustionEngine::translated_branch(int slice, const GroupElement& k, const Cycle& c) const {
    const SchubertDatum ks = translate(k, schubert_, sc_);
    const SliceDatum kslice = schubert_slice(ks, act(k, slices_[slice].base), sc_);
    const SectionVector ksec = highest_weight_section(ks, sc_);
    const IncidenceRecord rec = pi_sigma(kslice, c, sc_, 1, opt_.seed);
    return r_S(ksec, rec.point, ks, metric_, sc_.tol);
}

ExhaustionEngine::Ascent ExhaustionEngine::ascend(int slice, const CRow& dual, CMat k, double f, double step_tol,
                                                  double noise, long budget) const {
    const int moves = 2 * static_cast<int>(sc_.rf.k0.size());
    long evals = 0;
    int iters = 0;
    int level = 0;
    bool stalled = false;
    while (level < kLevels && moves > 0) {
        double best = f;
        int best_m = -1;
        CMat best_k;
        for (int m = 0; m < moves; ++m) {
            CMat cand = k * steps_[level][m];
            const double fc = branch_or_neg_inf(slice, cand, dual);
            ++evals;
            if (fc > best) {
                best = fc;
                best_m = m;
                best_k = std::move(cand);
            }
        }
        ++iters;
        if (best_m >= 0 && best - f > improvement_floor(f) + noise) {
            k = best_k;
            f = best;
        } else {
            if (step_sizes_[level] < step_tol) break;
            ++level;
        }
        if (evals >= budget) {
            stalled = true;
            break;
        }
    }
    return {f, k, evals, iters, step_sizes_[std::min(level, kLevels - 1)], stalled};
}

ExhaustionSample ExhaustionEngine::r_md(const Cycle& c) const {
    if (!cycle_in_domain(c, sc_)) fail(ErrorCode::NotInDomain, "cycle is not in M_D");
    ExhaustionSample out;
    out.subject = c;
    out.value = -std::numeric_limits<double>::infinity();
    long budget = opt_.max_evaluations;
    // Near the boundary of M_D the maximizing peak over K0 narrows in proportion to the margin, and
    // a rounding-level change of k moves the branch value by about eps / margin.
    const double margin = cycle_margin(c, sc_);
    const double step_tol = std::max(std::min(opt_.ascent_step_tol, 1e-4 * margin), 1e-14);
    const double noise = std::numeric_limits<double>::epsilon() / margin;
    const std::size_t ns = samples_.size();
    std::vector<double> values(ns);
    std::vector<std::size_t> order(ns);
    for (int j = 0; j < static_cast<int>(slices_.size()); ++j) {
        for (std::size_t i = 0; i < ns; ++i) values[i] = branch_or_neg_inf(j, samples_[i], c.dual);
        budget -= static_cast<long>(ns);
        out.report.evaluations += static_cast<long>(ns);
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t starts = std::min<std::size_t>(opt_.ascent_starts, ns);
        std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                          [&](std::size_t a, std::size_t b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });
        for (std::size_t s = 0; s < starts; ++s) {
            if (!std::isfinite(values[order[s]])) continue;
            const auto asc = ascend(j, c.dual, samples_[order[s]], values[order[s]], step_tol, noise,
                                    std::max(budget, 1L));
            budget -= asc.evaluations;
            out.report.evaluations += asc.evaluations;
            out.report.iterations += asc.iterations;
            out.report.stalled = out.report.stalled || asc.stalled;
            if (asc.value > out.value) {
                out.value = asc.value;
                out.argmax_slice = j;
                out.argmax_k = GroupElement::unchecked(asc.k);
                out.report.final_step = asc.step;
            }
        }
    }
    if (!std::isfinite(out.value)) fail(ErrorCode::IncidenceMiss, "no admissible slice point for any sampled translate");
    return out;
}

ExhaustionSample ExhaustionEngine::r_xd(const IncidencePoint& x) const {
    ExhaustionSample s = r_md(nu(x));
    s.subject = nu(x);
    return s;
}

ExhaustionSample ExhaustionEngine::r_d(const FlagPoint& y) const {
    if (!in_domain(y, sc_)) fail(ErrorCode::NotInDomain, "point is not in D");
    const FiberParam fiber = mu_fiber(y, sc_);
    const int q = fiber.dim();
    long evaluations = 0;
    int iterations = 0;

    struct Candidate {
        double value;
        CVec c;
        ExhaustionSample sample;
    };
    // Every cycle through y has margin at most m_y. Members within a few hundred ulps of the boundary
    // of M_D cannot be resolved and would pull the infimum down, so they are skipped.
    const double m_y = sc_.domain_sign * form_value(y.vec(), sc_);
    const double min_margin = std::min(128.0 * std::numeric_limits<double>::epsilon(), 0.5 * m_y);
    const double noise = std::numeric_limits<double>::epsilon() / m_y;
    auto evaluate = [&](const CVec& c) -> std::optional<Candidate> {
        if (q > 0 && c.norm() >= 1.0) return std::nullopt;
        const Cycle cyc = fiber.member(c);
        if (!cycle_in_domain(cyc, sc_) || cycle_margin(cyc, sc_) < min_margin) return std::nullopt;
        ExhaustionSample s = r_md(cyc);
        evaluations += s.report.evaluations;
        return Candidate{s.value, c, std::move(s)};
    };

    std::optional<Candidate> best;
    if (q == 0) {
        best = evaluate(CVec(0));
    } else {
        const int res = opt_.fiber_resolution;
        const double r = opt_.fiber_radius;
        const int real_dim = 2 * q;
        std::vector<int> idx(real_dim, 0);
        for (bool done = false; !done;) {
            CVec c(q);
            for (int a = 0; a < q; ++a) {
                const double x = res == 1 ? 0.0 : -r + 2.0 * r * idx[2 * a] / (res - 1);
                const double yv = res == 1 ? 0.0 : -r + 2.0 * r * idx[2 * a + 1] / (res - 1);
                c(a) = cplx(x, yv);
            }
            if (c.norm() <= r) {
                if (auto cand = evaluate(c); cand && (!best || cand->value < best->value)) best = std::move(cand);
            }
            done = true;
            for (int i = real_dim - 1; i >= 0; --i) {
                if (++idx[i] < res) {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
        }
        if (!best) best = evaluate(CVec::Zero(q));
        if (!best) fail(ErrorCode::FiberEmpty, "no admissible fiber member found");

        // Compass descent in the real coordinates of the fiber disc.
        const double h0 = res == 1 ? 0.5 * r : r / (res - 1);
        int level = 0;
        while (level < kLevels) {
            const double h = h0 * std::pow(opt_.descent_shrink, level);
            std::optional<Candidate> poll_best;
            for (int m = 0; m < 2 * real_dim; ++m) {
                CVec c = best->c;
                const int a = m / 4;
                const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
                c(a) += ((m / 2) % 2 == 0) ? cplx(sgn * h, 0.0) : cplx(0.0, sgn * h);
                if (auto cand = evaluate(c); cand && cand->value < (poll_best ? poll_best->value : best->value))
                    poll_best = std::move(cand);
            }
            ++iterations;
            if (poll_best && best->value - poll_best->value > improvement_floor(best->value) + noise) {
                best = std::move(poll_best);
            } else {
                if (h < opt_.descent_step_tol) break;
                ++level;
            }
            if (evaluations >= opt_.max_evaluations * 64) break;
        }
    }
    if (!best) fail(ErrorCode::FiberEmpty, "no admissible fiber member found");

    ExhaustionSample out = std::move(best->sample);
    out.arginf_cycle = std::get<Cycle>(out.subject);
    out.arginf_fiber_coords = best->c;
    out.subject = y;
    out.report.evaluations = evaluations;
    out.report.iterations = iterations;
    return out;
}

ExhaustionSample r_MD(const Cycle& c, const ScenarioConfig& sc, const OptimizerSettings& opt) {
    return ExhaustionEngine(sc, opt).r_md(c);
}

ExhaustionSample r_XD(const IncidencePoint& x, const ScenarioConfig& sc, const OptimizerSettings& opt) {
    return ExhaustionEngine(sc, opt).r_xd(x);
}

ExhaustionSample r_D(const FlagPoint& y, const ScenarioConfig& sc, const OptimizerSettings& opt) {
    return ExhaustionEngine(sc, opt).r_d(y);
}

Target parse_target(const std::string& name) {
    if (name == "r_s") return Target::r_s;
    if (name == "r_md") return Target::r_md;
    if (name == "r_d") return Target::r_d;
    fail(ErrorCode::InvalidInput, "unknown target '" + name + "'");
}

std::string target_name(Target t) {
    switch (t) {
        case Target::r_s: return "r_s";
        case Target::r_md: return "r_md";
        case Target::r_d: return "r_d";
    }
    return "";
}

TargetChart::TargetChart(const ExhaustionEngine& engine, Target target) : engine_(&engine), target_(target) {
    const ScenarioConfig& sc = engine.scenario();
    switch (target) {
        case Target::r_s:
            dim_ = engine.schubert().dim_S;
            break;
        case Target::r_d:
            chart_ = chart(sc.base_point, sc);
            dim_ = chart_.dim();
            break;
        case Target::r_md:
            if (sc.q == 0) {
                chart_ = chart(sc.base_point, sc);
            } else {
                chart_ = chart_of_vector(base_cycle(sc).dual.transpose());
            }
            dim_ = chart_.dim();
            break;
    }
}

ExhaustionSample TargetChart::at(const CVec& coords) const {
    const ScenarioConfig& sc = engine_->scenario();
    switch (target_) {
        case Target::r_s: {
            const SliceDatum& sl = engine_->slices().front();
            const FlagPoint z = sl.cell_point(coords);
            ExhaustionSample s;
            s.subject = z;
            s.value = r_S(engine_->section(), z, engine_->schubert(), engine_->metric(), sc.tol);
            s.argmax_k = GroupElement::identity(sc.dim());
            return s;
        }
        case Target::r_d:
            return engine_->r_d(chart_.point(coords));
        case Target::r_md:
            if (sc.q == 0) return engine_->r_md(cycle_of_point(chart_.point(coords)));
            return engine_->r_md(cycle_from_dual(chart_.lift(coords).transpose()));
    }
    fail(ErrorCode::InvalidInput, "unknown target");
}

std::vector<GridPoint> evaluate_grid(const GridRegion& region, Target target, const ExhaustionEngine& engine,
                                     int threads) {
    if (region.n <= 0) return {};
    const TargetChart tc(engine, target);
    const int axis = region.axis < 0 ? tc.dim() - 1 : region.axis;
    if (axis >= tc.dim()) fail(ErrorCode::InvalidInput, "grid axis outside the chart");
    const int n = region.n;
    auto coord = [&](int i) { return n == 1 ? region.min : region.min + (region.max - region.min) * i / (n - 1); };
    std::vector<GridPoint> out(static_cast<std::size_t>(n) * n);
    parallel_for(out.size(), threads, [&](std::size_t idx) {
        GridPoint& g = out[idx];
        g.re = coord(static_cast<int>(idx % n));
        g.im = coord(static_cast<int>(idx / n));
        CVec c = CVec::Zero(tc.dim());
        c(axis) = cplx(g.re, g.im);
        try {
            g.sample = tc.at(c);
            g.ok = std::isfinite(g.sample.value);
            if (!g.ok) g.error = "non-finite value";
        } catch (const CycleLabError& e) {
            g.ok = false;
            g.error = e.what();
        }
    });
    return out;
}

}  // namespace cyclelab
