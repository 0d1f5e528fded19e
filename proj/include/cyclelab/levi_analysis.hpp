#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cyclelab/exhaustions.hpp"

namespace cyclelab {

enum class Verdict { psh_ok, q_convex_ok, fail };
std::string verdict_name(Verdict v);

/// Scalar field on complex chart coordinates.
using ChartField = std::function<double(const CVec&)>;

struct LeviReport {
    std::variant<std::monostate, FlagPoint, Cycle> point;
    std::string chart_id;
    double value = 0.0;
    Eigen::MatrixXcd levi_matrix;
    std::vector<double> eigenvalues;  ///< ascending
    int n_pos = 0;
    int n_zero = 0;
    int n_neg = 0;
    double fd_step = 0.0;
    Verdict verdict = Verdict::fail;
};

struct Signature {
    int n_pos = 0;
    int n_zero = 0;
    int n_neg = 0;
};

/// Matrix of d^2 f / dc_a d(conj c_b) from central differences on the real and imaginary parts,
/// Hermitian-symmetrized; with `richardson` the steps h and h/2 are combined.
Eigen::MatrixXcd levi_matrix_fd(const ChartField& f, const CVec& p, double h, bool richardson = true);

/// Throws StencilFailure when f fails or is non-finite on the stencil. Verdict psh_ok iff all
/// eigenvalues exceed the zero band.
LeviReport levi_form_fd(const ChartField& f, const CVec& p, double h, double zero_band = 1e-6);

/// Throws InvalidMatrix unless Hermitian within 1e-10.
Signature eig_signature(const Eigen::MatrixXcd& m, double zero_band);

struct SubmeanResult {
    bool passed = false;
    double centre_value = 0.0;
    double circle_mean = 0.0;
};

/// f(centre) <= mean of f over centre + radius e^{i theta} direction, theta = 2 pi k / samples.
/// Throws DiscOutOfDomain when f cannot be evaluated on the circle.
SubmeanResult submeanvalue_measure(const ChartField& f, const CVec& centre, double radius, const CVec& direction,
                                   int samples, double tolerance = 1e-6);
bool submeanvalue_test(const ChartField& f, const CVec& centre, double radius, const CVec& direction, int samples,
                       double tolerance = 1e-6);

/// Local minorant h~ = r_{k(S)} o pi_{k(Sigma_j)} o C*, where C*(p) is the cycle realizing the
/// infimum in r_D(p) and (j, k) is the active branch at the touch point.
struct MinorantDatum {
    FlagPoint touch_point;
    std::string description;
    int active_slice = 0;
    GroupElement active_k;
    Cycle touch_cycle;
    double touch_gap = 0.0;
    double min_gap = 0.0;
    double probe_radius = 0.0;
    int probes = 0;
    int halvings = 0;
    int reoptimized = 0;
    double soundness_min_gap = 0.0;
    bool sound = false;
};

struct CertificateSettings {
    double probe_radius = 1e-2;
    int probes = 200;
    int max_halvings = 4;
    int soundness_probes = 20;
    double gap_tolerance = 1e-9;
    double soundness_tolerance = 1e-8;
    std::uint64_t seed = 42;
    /// Settings for the independent re-optimization of r_D (violations and soundness probes).
    OptimizerSettings refined{.k0_resolution = 0, .k0_extra = -1, .seed = 4242, .ascent_starts = 3,
                              .fiber_resolution = 7};
};

struct Certificate {
    LeviReport levi;
    MinorantDatum minorant;
};

/// q-pseudoconvexity certificate for r_D at y: touching minorant, probe-ball check, soundness
/// re-check and Levi signature (n_pos >= n_Z - q). Throws NotInDomain for y outside D and
/// MinorantFailure when the probe check fails after all radius halvings.
Certificate q_pseudoconvex_certificate(const FlagPoint& y, const ExhaustionEngine& engine,
                                       const CertificateSettings& cs = {});
Certificate q_pseudoconvex_certificate(const FlagPoint& y, const ScenarioConfig& sc, const OptimizerSettings& opt = {},
                                       const CertificateSettings& cs = {});

}  // namespace cyclelab
