#pragma once

#include "termdec/certifier.hpp"
#include "termdec/module_builder.hpp"

#include <optional>
#include <string>
#include <vector>

namespace termdec {

struct AnalysisConfig {
    int max_iterations = 50;
    double timeout_seconds = 120.0;
    std::size_t state_budget = 1u << 20;
    bool check_certificates = true;
    bool emit_remainder = false;
};

enum class Verdict {
    Terminating,
    Unknown,
    BudgetExhausted,
};

std::string to_string(Verdict v);

struct AnalysisStats {
    double overall_s = 0;
    double lasso_analysis_s = 0;
    double module_construction_s = 0;
    double inclusion_s = 0;
    int iterations = 0;
    int trivial_rf_modules = 0;
    int nontrivial_rf_modules = 0;
    std::size_t max_module_size = 0;
};

struct AnalysisResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<CertifiedModule> modules;      // materialized extended modules
    std::optional<LassoTrace> failed_lasso;    // set on Unknown
    std::optional<Buchi> remainder;            // set when emit_remainder is on
    AnalysisStats stats;
    std::vector<LassoTrace> lasso_history;
    std::string message;
};

/// The refinement loop: while some program trace lies outside the modules
/// built so far (checked as emptiness of the intersection with their cached
/// complements), extract a lasso, synthesize a ranking function, certify the
/// lasso module and generalize it. Terminating is returned only after every
/// module re-passed the certificate check and the final emptiness check
/// passed in the same run.
AnalysisResult analyze(const Program& p, const AnalysisConfig& cfg = {});

/// True iff no two extracted lassos denote the same omega-word (compared by
/// canonical form: primitive loop period, minimal stem).
bool progress_guarantee_check(const std::vector<LassoTrace>& history);

}  // namespace termdec
