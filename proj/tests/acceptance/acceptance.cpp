// Acceptance run: one PASS/FAIL line per criterion, full sample counts.
// Usage: acceptance <path to cyclelab_cli>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cyclelab/parallel.hpp"
#include "cyclelab/rng.hpp"
#include "cyclelab/scenarios.hpp"
#include "cyclelab/verification.hpp"

using namespace cyclelab;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Line {
    std::string label;
    bool passed = true;
    std::string detail;
};

int failures = 0;

/// Runs one criterion and prints its verdict, the time taken and one line per part.
void report(int criterion, const std::string& title, const std::function<std::vector<Line>()>& run) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Line> parts = run();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = true;
    for (const auto& p : parts) ok = ok && p.passed;
    if (!ok) ++failures;
    std::printf("%s  criterion %2d  %s  (%.1f s)\n", ok ? "PASS" : "FAIL", criterion, title.c_str(), seconds);
    for (const auto& p : parts)
        std::printf("        %s %s: %s\n", p.passed ? "ok  " : "FAIL", p.label.c_str(), p.detail.c_str());
    std::fflush(stdout);
}

Line from_check(const std::string& label, const CheckResult& c) {
    std::ostringstream os;
    os << c.name << " measured " << c.measured << ' ' << c.relation << ' ' << c.tolerance << " (n=" << c.count << ")";
    if (!c.detail.empty()) os << "  " << c.detail;
    return {label, c.passed, os.str()};
}

double su11_closed_form(double a) { return -2.0 * std::log(1.0 - a) + std::log(1.0 + a * a) + std::log(2.0); }

/// Criterion 1 with the closed form evaluated here, on points of the base chart w = v0 / v1.
std::vector<Line> closed_form(const ExhaustionEngine& e) {
    Rng rng(derive_seed(kSeed, 501));
    std::vector<cplx> ws{0.0, 0.5};
    while (ws.size() < 100) ws.push_back(std::polar(0.99 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * std::numbers::pi)));
    std::vector<double> err(ws.size());
    parallel_for(ws.size(), worker_count(), [&](std::size_t i) {
        CVec v(2);
        v << ws[i], 1.0;
        err[i] = std::abs(e.r_md(cycle_of_point(FlagPoint::from_vector(v))).value - su11_closed_form(std::abs(ws[i])));
    });
    double worst = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < err.size(); ++i)
        if (err[i] > worst) worst = err[i], arg = i;
    std::ostringstream d, s;
    d << "max |r_MD - closed form| = " << worst << " < 1e-06 over " << ws.size() << " points, |w| <= 0.99 (worst at |w| = "
      << std::abs(ws[arg]) << ")";
    s << "r_MD(0) - log 2 = " << err[0] << ", r_MD(0.5) - log 10 = " << err[1];
    return {{"su11 closed form", worst < 1e-6, d.str()}, {"su11 spot values", err[0] < 1e-6 && err[1] < 1e-6, s.str()}};
}

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Line> determinism(const std::string& cli) {
    const auto dir = std::filesystem::temp_directory_path() / ("cyclelab_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::vector<Line> out;
    for (const char* scenario : {"su11", "su21"}) {
        const auto a = dir / (std::string(scenario) + "_a.json"), b = dir / (std::string(scenario) + "_b.json");
        const std::string base = std::string("verify --scenario ") + scenario + " --seed 42 --out ";
        const int ca = run_cli(cli, base + "\"" + a.string() + "\"");
        const int cb = run_cli(cli, base + "\"" + b.string() + "\"");
        const std::string ra = slurp(a), rb = slurp(b);
        const bool same = !ra.empty() && ra == rb;
        std::ostringstream d;
        d << "exit codes " << ca << ", " << cb << "; report sizes " << ra.size() << ", " << rb.size() << " bytes; "
          << (same ? "byte-identical" : "reports differ");
        out.push_back({std::string(scenario) + " verify --seed 42 twice", same && ca == 0 && cb == 0, d.str()});
    }
    std::filesystem::remove_all(dir);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <cyclelab_cli>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const int threads = worker_count();
    const SuiteCounts n = full_counts();
    const ScenarioConfig su11 = make_su11(), su21 = make_su21();
    const ExhaustionEngine e11(su11), e21(su21);
    const auto start = std::chrono::steady_clock::now();

    report(1, "SU11 closed form of r_MD", [&] { return closed_form(e11); });

    report(2, "translation identity", [&] {
        return std::vector<Line>{from_check("su11", check_translation_identity(e11, n.translation, kSeed)),
                                 from_check("su21", check_translation_identity(e21, n.translation, kSeed))};
    });

    report(3, "K0-invariance of r_MD", [&] {
        return std::vector<Line>{from_check("su11", check_k0_invariance(e11, n.invariance, kSeed)),
                                 from_check("su21", check_k0_invariance(e21, n.invariance, kSeed))};
    });

    report(4, "sub-mean-value property of r_MD", [&] {
        return std::vector<Line>{from_check("su11", check_submeanvalue(e11, n.discs, n.disc_samples, kSeed)),
                                 from_check("su21", check_submeanvalue(e21, n.discs, n.disc_samples, kSeed))};
    });

    report(5, "exhaustion divergence", [&] {
        return std::vector<Line>{from_check("su11 r_MD", check_divergence_md(e11, n.divergence_paths, kSeed)),
                                 from_check("su11 r_D", check_divergence_d(e11, n.divergence_paths, kSeed)),
                                 from_check("su21 r_MD", check_divergence_md(e21, n.divergence_paths, kSeed)),
                                 from_check("su21 r_D", check_divergence_d(e21, n.divergence_paths, kSeed))};
    });

    report(6, "unique slice intersection", [&] {
        return std::vector<Line>{from_check("su21", check_unique_incidence(e21, n.incidence, kSeed))};
    });

    report(7, "q = 0 degeneration r_D = r_MD", [&] {
        return std::vector<Line>{from_check("su11", check_degeneration(e11, n.degeneration_grid))};
    });

    report(8, "q-pseudoconvexity certificates", [&] {
        return std::vector<Line>{from_check("su11", check_certificates(e11, n.certificates, kSeed, threads)),
                                 from_check("su21", check_certificates(e21, n.certificates, kSeed, threads))};
    });

    report(9, "strict psh of r_S", [&] {
        return std::vector<Line>{from_check("su11", check_rs_strict_psh(e11, n.psh_points, kSeed)),
                                 from_check("su21", check_rs_strict_psh(e21, n.psh_points, kSeed)),
                                 from_check("fd convergence", check_fd_convergence())};
    });

    report(10, "metric invariance and Iwasawa round trip", [&] {
        return std::vector<Line>{from_check("su11 metric", check_metric_invariance(su11, n.metric, kSeed)),
                                 from_check("su21 metric", check_metric_invariance(su21, n.metric, kSeed)),
                                 from_check("su11 round trip", check_iwasawa_round_trip(su11, n.round_trip, kSeed)),
                                 from_check("su21 round trip", check_iwasawa_round_trip(su21, n.round_trip, kSeed))};
    });

    report(11, "determinism of verify reports", [&] { return determinism(cli); });

    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of 11 criteria passed in %.1f s\n", 11 - failures, total);
    return failures == 0 ? 0 : 1;
}
