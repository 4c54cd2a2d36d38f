#pragma once

// The acceptance suite: numbered end-to-end checks shared by the test binary
// and `hecke verify`.

#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hecke {

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    /// Measured quantities with the thresholds they were held to.
    std::vector<std::pair<std::string, double>> measured;
    std::string detail;
    double seconds = 0.0;
};

/// "A1" ... "A11".
std::vector<std::string> acceptance_ids();

/// Runs one criterion. Exceptions are caught and reported as a failure.
CriterionResult run_criterion(const std::string& id, int workers = 0);

/// Runs every criterion in order, calling on_done after each.
std::vector<CriterionResult> run_acceptance(int workers = 0,
                                            const std::function<void(const CriterionResult&)>& on_done = {});

/// One line per criterion: "A3 PASS  Hecke formula ... (1.2 s) key=value ...".
std::string format_result(const CriterionResult& r);

/// JSON report with one entry per criterion.
std::string results_to_json(const std::vector<CriterionResult>& results);

/// Runs the suite, writes the JSON report, returns 0 iff everything passed.
int verify_all(const std::filesystem::path& report_path, int workers = 0,
               const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace hecke
