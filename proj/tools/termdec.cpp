#include "termdec/driver.hpp"
#include "termdec/frontend.hpp"
#include "termdec/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitTerminating = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInputError = 3;
constexpr int kExitCertificateViolation = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_prove(const std::string& file, std::string format, const termdec::AnalysisConfig& cfg,
              const std::string& report_path, const std::string& dot_dir, bool stats_row) {
    using namespace termdec;

    if (format.empty()) {
        auto ext = std::filesystem::path(file).extension().string();
        format = ext == ".cfg" ? "cfg" : "wprog";
    }
    Program program;
    try {
        std::string source = read_file(file);
        program = format == "cfg" ? parse_cfg(source) : parse_while_program(source);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    AnalysisResult result = analyze(program, cfg);
    Report report = make_report(std::filesystem::path(file).filename().string(), program, result);

    std::cout << "verdict: " << report.verdict << "\n";
    if (!result.message.empty())
        std::cout << "note: " << result.message << "\n";
    std::cout << "iterations: " << result.stats.iterations << ", modules: " << result.modules.size()
              << " (" << result.stats.trivial_rf_modules << " trivial rf, "
              << result.stats.nontrivial_rf_modules << " non-trivial rf)\n";
    for (std::size_t i = 0; i < result.modules.size(); ++i) {
        const CertifiedModule& cm = result.modules[i];
        std::cout << "  module " << i << ": " << cm.module.program().location_count()
                  << " states, f = " << to_string(cm.rank.as_term()) << "\n";
    }
    if (result.failed_lasso.has_value())
        std::cout << "offending lasso: " << to_string(*result.failed_lasso) << "\n";
    if (stats_row) {
        std::cout << stats_row_header() << "\n";
        std::cout << emit_stats_row(report) << "\n";
    }

    if (!dot_dir.empty())
        write_dot_files(dot_dir, program, result);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return kExitInputError;
        }
        out << report_to_json(report).dump(2) << "\n";
    }

    if (cfg.check_certificates && !result.modules.empty()) {
        RevalidationResult reval = revalidate_report(report);
        if (!reval.ok()) {
            for (const std::string& v : reval.violations)
                std::cerr << "certificate violation: " << v << "\n";
            return kExitCertificateViolation;
        }
    }

    switch (result.verdict) {
    case Verdict::Terminating: return kExitTerminating;
    case Verdict::Unknown: return kExitUnknown;
    case Verdict::BudgetExhausted: return kExitBudget;
    }
    return kExitUnknown;
}

int run_check_cert(const std::string& dir) {
    using namespace termdec;
    auto path = std::filesystem::path(dir) / "report.json";
    Report report;
    try {
        report = report_from_json(nlohmann::json::parse(read_file(path.string())));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    RevalidationResult reval = revalidate_report(report);
    std::cout << "checked " << reval.modules_checked << " modules\n";
    if (!reval.ok()) {
        for (const std::string& v : reval.violations)
            std::cerr << "certificate violation: " << v << "\n";
        return kExitCertificateViolation;
    }
    std::cout << "all certificates valid\n";
    return kExitTerminating;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"termdec: termination analysis by decomposition into certified modules"};
    app.require_subcommand(1);
    app.footer("Environment: TERMDEC_SEED is reserved for future use; runs are deterministic.");

    auto* prove = app.add_subcommand("prove", "analyze a program for termination");
    std::string file, format, report_path, dot_dir;
    bool stats_row = false;
    bool no_check = false;
    termdec::AnalysisConfig cfg;
    prove->add_option("file", file, "input program (.wprog or .cfg)")->required();
    prove->add_option("--format", format, "input format: wprog|cfg (default: by extension)")
        ->check(CLI::IsMember({"wprog", "cfg"}));
    prove->add_option("--max-iter", cfg.max_iterations, "maximum refinement iterations");
    prove->add_option("--timeout", cfg.timeout_seconds, "analysis timeout in seconds");
    prove->add_option("--state-budget", cfg.state_budget, "complement state budget");
    prove->add_option("--report", report_path, "write a JSON report to this path");
    prove->add_option("--dot", dot_dir, "write DOT graphs into this directory");
    prove->add_flag("--no-check-certificates", no_check, "skip the independent certificate checks");
    prove->add_flag("--emit-remainder", cfg.emit_remainder, "attach the remainder automaton on failure");
    prove->add_flag("--stats-row", stats_row, "print the statistics table row");

    auto* check = app.add_subcommand("check-cert", "re-validate a serialized decomposition");
    std::string dir;
    check->add_option("dir", dir, "directory containing report.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (prove->parsed()) {
            cfg.check_certificates = !no_check;
            return run_prove(file, format, cfg, report_path, dot_dir, stats_row);
        }
        return run_check_cert(dir);
    } catch (const std::logic_error& e) {
        std::cerr << "certificate soundness failure: " << e.what() << "\n";
        return kExitCertificateViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
