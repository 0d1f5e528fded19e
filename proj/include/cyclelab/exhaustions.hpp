#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyclelab/bundle_sections.hpp"

namespace cyclelab {

/// Approximation scheme for the supremum over K0 and the infimum over mu-fibers.
struct OptimizerSettings {
    int k0_resolution = 0;  ///< coarse grid points per K0 coordinate; 0 selects the scenario default
    int k0_extra = -1;      ///< extra Halton points; -1 selects the scenario default
    std::uint64_t seed = 42;
    double ascent_step_tol = 1e-8;  ///< tightened to 1e-4 * margin for cycles near the boundary
    double ascent_shrink = 0.25;  ///< step factor after an unsuccessful compass poll
    int ascent_starts = 2;
    int fiber_resolution = 5;  ///< coarse fiber grid per real coordinate
    double fiber_radius = 0.96;
    double descent_step_tol = 1e-8;
    double descent_shrink = 0.125;
    long max_evaluations = 5'000'000;
};

struct OptimizerReport {
    long evaluations = 0;
    int iterations = 0;
    double final_step = 0.0;
    bool stalled = false;
};

struct ExhaustionSample {
    std::variant<Cycle, FlagPoint> subject;
    double value = 0.0;
    int argmax_slice = 0;
    GroupElement argmax_k;
    std::optional<Cycle> arginf_cycle;
    std::optional<CVec> arginf_fiber_coords;
    OptimizerReport report;
};

/// Precomputed Schubert data, K0 sample and step tables for one scenario. Evaluation methods are
/// const and keep their optimizer state on the stack, so one engine can serve many threads.
class ExhaustionEngine {
public:
    explicit ExhaustionEngine(const ScenarioConfig& sc, OptimizerSettings opt = {});

    const ScenarioConfig& scenario() const { return sc_; }
    const OptimizerSettings& settings() const { return opt_; }
    const SchubertDatum& schubert() const { return schubert_; }
    const std::vector<SliceDatum>& slices() const { return slices_; }
    const SectionVector& section() const { return section_; }
    const HermitianMetric& metric() const { return metric_; }
    std::size_t k0_sample_size() const { return samples_.size(); }

    /// Right side of the translation identity: r_S(pi_Sigma_j(k^{-1} C)) via the dual vector.
    double branch(int slice, const CMat& k, const CRow& dual) const;
    double branch(int slice, const GroupElement& k, const Cycle& c) const;
    /// Left side: r_{k(S)}(pi_{k(Sigma_j)}(C)) from the translated Schubert datum and section.
    double translated_branch(int slice, const GroupElement& k, const Cycle& c) const;

    ExhaustionSample r_md(const Cycle& c) const;
    ExhaustionSample r_xd(const IncidencePoint& x) const;
    ExhaustionSample r_d(const FlagPoint& y) const;

private:
    /// branch() without exceptions: -inf where the translated slice point is not admissible.
    double branch_or_neg_inf(int slice, const CMat& k, const CRow& dual) const noexcept;

    struct Ascent {
        double value;
        CMat k;
        long evaluations;
        int iterations;
        double step;
        bool stalled;
    };
    Ascent ascend(int slice, const CRow& dual, CMat k, double f, double step_tol, double noise, long budget) const;

    ScenarioConfig sc_;
    OptimizerSettings opt_;
    SchubertDatum schubert_;
    std::vector<SliceDatum> slices_;
    SectionVector section_;
    HermitianMetric metric_;
    double section_dual_norm_sq_ = 1.0;
    std::vector<CMat> samples_;
    std::vector<std::vector<CMat>> steps_;  ///< steps_[level][2 i + s] = exp((-1)^s h_level X_i)
    std::vector<double> step_sizes_;
};

ExhaustionSample r_MD(const Cycle& c, const ScenarioConfig& sc, const OptimizerSettings& opt = {});
ExhaustionSample r_XD(const IncidencePoint& x, const ScenarioConfig& sc, const OptimizerSettings& opt = {});
ExhaustionSample r_D(const FlagPoint& y, const ScenarioConfig& sc, const OptimizerSettings& opt = {});

enum class Target { r_s, r_md, r_d };
Target parse_target(const std::string& name);
std::string target_name(Target t);

/// Evaluates a target on complex chart coordinates c in C^dim:
///   r_d: chart of Z at z0; r_s: cell chart of the first slice of S_0 (dim 1);
///   r_md: for point cycles the point chart at z0, otherwise the chart of dual vectors at C0.
class TargetChart {
public:
    TargetChart(const ExhaustionEngine& engine, Target target);
    int dim() const { return dim_; }
    Target target() const { return target_; }
    ExhaustionSample at(const CVec& coords) const;

private:
    const ExhaustionEngine* engine_;
    Target target_;
    int dim_ = 0;
    ChartMap chart_;
};

struct GridRegion {
    double min = -1.0;
    double max = 1.0;
    int n = 0;     ///< points per axis; the grid is n x n over (re, im)
    int axis = -1; ///< chart coordinate that varies; -1 selects the last
};

struct GridPoint {
    double re = 0.0;
    double im = 0.0;
    bool ok = false;
    std::string error;
    ExhaustionSample sample;
};

/// Row-major (im outer, re inner) evaluation; failures are recorded per point.
std::vector<GridPoint> evaluate_grid(const GridRegion& region, Target target, const ExhaustionEngine& engine,
                                     int threads = 1);

}  // namespace cyclelab
