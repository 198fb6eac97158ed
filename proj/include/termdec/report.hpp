#pragma once

#include "termdec/driver.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace termdec {

struct CubeRecord {
    std::string mode;  // "INF" | "FINITE" | "ABSENT"
    std::vector<std::string> atoms;

    bool operator==(const CubeRecord&) const = default;
};

struct PredicateRecord {
    std::string text;
    std::vector<CubeRecord> cubes;

    bool operator==(const PredicateRecord&) const = default;
};

struct EdgeRecord {
    std::string from;
    std::string stmt;
    std::string to;

    bool operator==(const EdgeRecord&) const = default;
};

struct ModuleRecord {
    int index = 0;
    bool trivial = false;
    std::map<std::string, std::string> ranking_coefficients;  // variable -> rational
    std::string ranking_constant = "0";
    std::size_t num_states = 0;
    std::string initial_state;
    std::string final_state;
    std::vector<EdgeRecord> edges;
    std::map<std::string, PredicateRecord> predicates;  // state -> annotation

    bool operator==(const ModuleRecord&) const = default;
};

struct TimesRecord {
    double overall_s = 0;
    double lasso_analysis_s = 0;
    double module_construction_s = 0;
    double inclusion_s = 0;

    bool operator==(const TimesRecord&) const = default;
};

struct CountsRecord {
    int modules_trivial_rf = 0;
    int modules_nontrivial_rf = 0;
    std::size_t max_module_size = 0;

    bool operator==(const CountsRecord&) const = default;
};

struct LassoRecord {
    std::vector<std::string> stem;
    std::vector<std::string> loop;

    bool operator==(const LassoRecord&) const = default;
};

struct Report {
    std::string filename;
    std::string verdict;
    int iterations = 0;
    TimesRecord times;
    CountsRecord counts;
    std::string program_cfg;
    std::vector<ModuleRecord> modules;
    std::optional<std::string> remainder_cfg;
    std::vector<std::string> remainder_accepting;
    std::optional<LassoRecord> offending_lasso;
    std::string message;

    bool operator==(const Report&) const = default;
};

Report make_report(const std::string& filename, const Program& p, const AnalysisResult& r);

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// One aligned text row in the column order filename, overall time, lasso
/// analysis time, module construction time, inclusion time, trivial-rf
/// count, non-trivial-rf count, maximum module size.
std::string emit_stats_row(const Report& r);
std::string stats_row_header();

/// Reconstructs every serialized module and reruns the certificate checker.
struct RevalidationResult {
    int modules_checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};
RevalidationResult revalidate_report(const Report& r);

/// Rebuilds the in-memory certified module of a report record.
CertifiedModule module_from_record(const ModuleRecord& m);

/// Writes program.dot, module_<i>.dot and, when present, remainder.dot.
void write_dot_files(const std::string& dir, const Program& p, const AnalysisResult& r);

}  // namespace termdec
