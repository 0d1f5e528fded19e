#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclelab/levi_analysis.hpp"

namespace cyclelab {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;  ///< worst observed value of the checked quantity
    double tolerance = 0.0;
    std::string relation;   ///< how measured is compared with tolerance, e.g. "<" or ">="
    long count = 0;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> checks;
    bool passed() const;
};

/// Sample sizes of the property checks.
struct SuiteCounts {
    int closed_form = 100;
    int translation = 50;
    int invariance = 50;
    int metric = 100;
    int round_trip = 100;
    int discs = 200;
    int disc_samples = 64;
    int divergence_paths = 10;
    int degeneration_grid = 41;
    int incidence = 50;
    int infimum = 10;
    int refinement = 10;
    int psh_points = 50;
    int certificates = 50;
};

SuiteCounts full_counts();
/// Smaller counts used by the `verify` command.
SuiteCounts quick_counts();

// Seeded samplers. Translates by random G0 elements keep cycles in M_D and points in D.
Cycle random_cycle_in_md(const ScenarioConfig& sc, Rng& rng, double scale);
FlagPoint random_point_in_d(const ScenarioConfig& sc, Rng& rng, double scale);
/// Point sampler for certificates: SU11-type (q = 0) uniform in |w| <= 0.9 of the base chart,
/// otherwise Fubini-Study uniform points of D with normalized form value >= 0.05.
FlagPoint random_certificate_point(const ScenarioConfig& sc, Rng& rng);

// Individual checks. Each is deterministic in (engine, count, seed).
CheckResult check_closed_form_disc(const ExhaustionEngine& e, int count, std::uint64_t seed);
CheckResult check_translation_identity(const ExhaustionEngine& e, int count, std::uint64_t seed);
CheckResult check_k0_invariance(const ExhaustionEngine& e, int count, std::uint64_t seed);
CheckResult check_metric_invariance(const ScenarioConfig& sc, int count, std::uint64_t seed);
CheckResult check_iwasawa_round_trip(const ScenarioConfig& sc, int count, std::uint64_t seed);
CheckResult check_cartan_involutive(const ScenarioConfig& sc, int count, std::uint64_t seed);
CheckResult check_submeanvalue(const ExhaustionEngine& e, int discs, int samples, std::uint64_t seed);
CheckResult check_divergence_md(const ExhaustionEngine& e, int paths, std::uint64_t seed);
CheckResult check_divergence_d(const ExhaustionEngine& e, int paths, std::uint64_t seed);
CheckResult check_degeneration(const ExhaustionEngine& e, int grid);
CheckResult check_infimum_consistency(const ExhaustionEngine& e, int count, std::uint64_t seed);
/// r_MD with a finer K0 sample never lies more than 1e-9 below the default value.
CheckResult check_monotone_refinement(const ExhaustionEngine& e, int count, std::uint64_t seed);
/// r_MD(C) >= r_S(pi_Sigma(C)) for every slice.
CheckResult check_branch_lower_bound(const ExhaustionEngine& e, int count, std::uint64_t seed);
CheckResult check_unique_incidence(const ExhaustionEngine& e, int count, std::uint64_t seed);
CheckResult check_fiber_incidence(const ExhaustionEngine& e, int count, std::uint64_t seed);
CheckResult check_rs_strict_psh(const ExhaustionEngine& e, int count, std::uint64_t seed);
CheckResult check_fd_convergence();
CheckResult check_certificates(const ExhaustionEngine& e, int count, std::uint64_t seed, int threads);

/// Suites: invariance, psh, exhaustion, incidence, levi; "all" runs every suite.
std::vector<std::string> suite_names();
std::vector<SuiteResult> run_suites(const std::string& which, const ExhaustionEngine& e, const SuiteCounts& counts,
                                    std::uint64_t seed, int threads);

}  // namespace cyclelab
