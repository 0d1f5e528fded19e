#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclelab/verification.hpp"

namespace cyclelab {

/// Suite results of one `verify` run. Timing is recorded only when requested so that reports of
/// identical runs are byte-identical.
struct VerificationReport {
    std::string scenario;
    std::uint64_t seed = 42;
    std::vector<SuiteResult> suites;
    std::optional<double> elapsed_seconds;
    bool passed() const;
};

/// Compiler and library versions; contains nothing that varies between runs.
nlohmann::ordered_json environment_stamp();

nlohmann::ordered_json to_json(cplx z);
nlohmann::ordered_json to_json(const CVec& v);
nlohmann::ordered_json to_json(const CRow& v);
nlohmann::ordered_json to_json(const CMat& m);
nlohmann::ordered_json to_json(const Eigen::MatrixXcd& m);
nlohmann::ordered_json to_json(const FlagPoint& z);
nlohmann::ordered_json to_json(const Cycle& c);
nlohmann::ordered_json to_json(const OptimizerReport& r);
nlohmann::ordered_json to_json(const ExhaustionSample& s);
nlohmann::ordered_json to_json(const LeviReport& r);
nlohmann::ordered_json to_json(const MinorantDatum& m);
nlohmann::ordered_json to_json(const CheckResult& c);
nlohmann::ordered_json to_json(const SuiteResult& s);
nlohmann::ordered_json to_json(const VerificationReport& r);

/// Readable one-line-per-check summary.
std::string summary_text(const VerificationReport& r);

}  // namespace cyclelab
