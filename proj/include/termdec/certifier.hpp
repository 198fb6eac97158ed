#pragma once

#include "termdec/logic.hpp"
#include "termdec/program.hpp"
#include "termdec/ranker.hpp"

#include <map>
#include <string>
#include <vector>

namespace termdec {

/// A Floyd-Hoare annotation of a module's locations over the program
/// variables and oldrnk.
struct RankCertificate {
    std::map<Location, Predicate> at;
};

struct CertifiedModule {
    Module module;
    RankingFunction rank;
    RankCertificate cert;
};

/// Builds the certificate for a lasso module from a synthesized ranking
/// function and supporting invariant: the initial location is annotated with
/// "oldrnk is infinite", stem locations by strongest postconditions, the
/// loop head with invariant /\ rank-below-oldrnk, and loop locations by
/// strongest postconditions through the rank update on the head's outgoing
/// edge. Throws CertificateClosureError when the propagation does not close
/// back into the loop-head predicate.
RankCertificate build_certificate(const Module& lasso_module, const RankingFunction& f, const Cube& invariant);

struct CertificateViolation {
    enum class Condition {
        InitialPredicate,  // initial location not equivalent to oldrnk == INF
        FinalDecrease,     // final predicate does not force rank below oldrnk
        EdgeInductive,     // some Hoare triple is invalid
    };

    Condition condition;
    std::optional<Edge> edge;
    std::string detail;
};

struct CheckResult {
    std::vector<CertificateViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// The executable soundness check: verifies the initial, decrease and
/// inductive conditions of a certified module, treating edges that leave the
/// final location as composed with the update oldrnk := f. Violations are
/// returned as data.
CheckResult check_certificate(const CertifiedModule& cm);

struct RankDecreaseProgram {
    Program program;
    Location loop_head;
    Location error_location;
};

/// The straight-line-then-loop program whose partial-correctness annotations
/// are rank certificates: an entry edge, the stem, two guard edges into an
/// error location encoding the rank-decrease assertion, and the loop.
RankDecreaseProgram build_rankdecrease_program(const LassoTrace& t, const RankingFunction& f);

/// Checks a partial-correctness annotation of a rank-decrease program: error
/// edges are plain Hoare triples, the loop-head step composes the oldrnk
/// update, and the annotation must map the error location to a predicate
/// entailing FALSE for the assertion to be unreachable.
bool check_rankdecrease_annotation(const RankDecreaseProgram& rd, const RankingFunction& f,
                                   const std::map<Location, Predicate>& annotation);

}  // namespace termdec
