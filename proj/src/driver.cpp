#include "termdec/driver.hpp"

#include <chrono>
#include <iostream>

namespace termdec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

class PhaseTimer {
  public:
    explicit PhaseTimer(double& sink) : sink_(sink), t0_(Clock::now()) {}
    ~PhaseTimer() { sink_ += seconds_since(t0_); }

  private:
    double& sink_;
    Clock::time_point t0_;
};

Cube infeasible_loop_invariant(const LassoTrace& effective, const Module& lasso_module,
                               const RankingFunction& f, RankCertificate& cert_out) {
    // FALSE certifies the module whenever the stem itself is infeasible;
    // otherwise fall back to the stem postcondition, which the dead loop
    // trivially preserves.
    Cube false_cube({Atom::leq_zero(LinearTerm::constant(1))});
    try {
        cert_out = build_certificate(lasso_module, f, false_cube);
        return false_cube;
    } catch (const CertificateClosureError&) {
    }
    Cube stem_post = summarize(effective).stem_post;
    cert_out = build_certificate(lasso_module, f, stem_post);
    return stem_post;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Terminating: return "TERMINATING";
    case Verdict::Unknown: return "UNKNOWN";
    case Verdict::BudgetExhausted: return "BUDGET_EXHAUSTED";
    }
    return "UNKNOWN";
}

bool progress_guarantee_check(const std::vector<LassoTrace>& history) {
    std::vector<LassoTrace> canon;
    canon.reserve(history.size());
    for (const LassoTrace& t : history)
        canon.push_back(t.canonical());
    for (std::size_t i = 0; i < canon.size(); ++i)
        for (std::size_t j = i + 1; j < canon.size(); ++j)
            if (canon[i] == canon[j])
                return false;
    return true;
}

AnalysisResult analyze(const Program& p, const AnalysisConfig& cfg) {
    AnalysisResult result;
    auto t_start = Clock::now();
    auto deadline = t_start + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(cfg.timeout_seconds));

    auto program_view = as_view(program_to_buchi(p));
    std::vector<Statement> alphabet = p.alphabet();
    std::vector<std::shared_ptr<ExtendedModule>> ext_modules;
    std::vector<std::shared_ptr<AutomatonView>> complements;

    ExploreLimits limits;
    limits.max_states = cfg.state_budget;
    limits.deadline = deadline;

    auto finalize = [&](Verdict v) {
        result.verdict = v;
        result.stats.iterations = static_cast<int>(result.lasso_history.size());
        for (const auto& em : ext_modules) {
            result.modules.push_back(em->to_certified_module());
            result.stats.max_module_size = std::max(result.stats.max_module_size, em->state_count());
            if (em->rank().is_trivial())
                ++result.stats.trivial_rf_modules;
            else
                ++result.stats.nontrivial_rf_modules;
        }
        if (cfg.emit_remainder && v != Verdict::Terminating) {
            try {
                auto rem = difference_view(program_view, complements);
                result.remainder = materialize(*rem, limits);
            } catch (const std::exception& e) {
                std::cerr << "warning: remainder construction failed: " << e.what() << "\n";
            }
        }
        result.stats.overall_s = seconds_since(t_start);
        return result;
    };

    try {
        while (true) {
            if (Clock::now() > deadline) {
                result.message = "timeout after " + std::to_string(cfg.timeout_seconds) + "s";
                return finalize(Verdict::BudgetExhausted);
            }

            std::optional<LassoTrace> counterexample;
            {
                PhaseTimer timer(result.stats.inclusion_s);
                auto diff = difference_view(program_view, complements);
                counterexample = is_empty(*diff, limits);
            }
            if (!counterexample.has_value()) {
                // Soundness gate: re-validate every certificate and re-run
                // the emptiness check before announcing termination.
                if (cfg.check_certificates) {
                    for (const auto& em : ext_modules) {
                        CheckResult check = check_certificate(em->to_certified_module());
                        if (!check.ok())
                            throw std::logic_error("module failed the certificate re-check: " +
                                                   check.violations.front().detail);
                    }
                }
                auto diff = difference_view(program_view, complements);
                if (is_empty(*diff, limits).has_value())
                    throw std::logic_error("final emptiness re-check disagreed");
                return finalize(Verdict::Terminating);
            }

            if (static_cast<int>(result.lasso_history.size()) >= cfg.max_iterations) {
                result.message = "iteration limit of " + std::to_string(cfg.max_iterations) + " reached";
                return finalize(Verdict::BudgetExhausted);
            }

            const LassoTrace& lasso = *counterexample;
            result.lasso_history.push_back(lasso);
            if (cfg.check_certificates) {
                if (!progress_guarantee_check(result.lasso_history))
                    throw std::logic_error("counterexample repeats an earlier lasso");
                for (const auto& em : ext_modules) {
                    auto view = as_buchi(em);
                    if (lasso_member(*view, lasso))
                        throw std::logic_error("counterexample already covered by an earlier module");
                }
            }

            LassoAnalysis analysis;
            {
                PhaseTimer timer(result.stats.lasso_analysis_s);
                analysis = analyze_lasso(lasso);
            }
            if (analysis.result.kind == RankerResult::Kind::NoRankFound) {
                result.failed_lasso = lasso;
                result.message = "no ranking function found for " + to_string(lasso);
                return finalize(Verdict::Unknown);
            }

            {
                PhaseTimer timer(result.stats.module_construction_s);
                Module lasso_module = lasso_module_of(analysis.effective);
                RankCertificate cert;
                Cube invariant;
                if (analysis.result.kind == RankerResult::Kind::InfeasibleLoop) {
                    invariant = infeasible_loop_invariant(analysis.effective, lasso_module,
                                                          analysis.result.ranking, cert);
                } else {
                    invariant = analysis.result.invariant;
                    cert = build_certificate(lasso_module, analysis.result.ranking, invariant);
                }
                CertifiedModule cm{lasso_module, analysis.result.ranking, cert};
                if (cfg.check_certificates) {
                    CheckResult check = check_certificate(cm);
                    if (!check.ok())
                        throw std::logic_error("freshly built certificate failed its check: " +
                                               check.violations.front().detail);
                }
                auto em = merge_locations(cm, alphabet, /*restrict_targets=*/true);
                auto em_view = as_buchi(em);
                if (!lasso_member(*em_view, analysis.effective))
                    throw std::logic_error("extended module does not accept its own lasso");
                ext_modules.push_back(em);
                complements.push_back(complement_view(em_view, cfg.state_budget));
            }
        }
    } catch (const TimeoutError& e) {
        result.message = e.what();
        return finalize(Verdict::BudgetExhausted);
    } catch (const StateBudgetError& e) {
        result.message = e.what();
        return finalize(Verdict::BudgetExhausted);
    } catch (const PredicateSizeError& e) {
        result.failed_lasso = result.lasso_history.empty()
                                  ? std::nullopt
                                  : std::optional<LassoTrace>(result.lasso_history.back());
        result.message = std::string("lasso analysis failed: ") + e.what();
        return finalize(Verdict::Unknown);
    } catch (const EntailmentBudgetError& e) {
        result.failed_lasso = result.lasso_history.empty()
                                  ? std::nullopt
                                  : std::optional<LassoTrace>(result.lasso_history.back());
        result.message = std::string("lasso analysis failed: ") + e.what();
        return finalize(Verdict::Unknown);
    }
}

}  // namespace termdec
