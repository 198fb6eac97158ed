#pragma once

#include "termdec/automata.hpp"
#include "termdec/logic.hpp"
#include "termdec/simplex.hpp"

#include <map>
#include <vector>

namespace termdec {

/// An affine map from valuations into the rationals, compared under the rank
/// order (a below b iff a < b and b >= 0, with everything below infinity).
struct RankingFunction {
    std::map<Variable, Rational> coefficients;
    Rational constant = 0;

    LinearTerm as_term() const {
        LinearTerm t = LinearTerm::constant(constant);
        for (const auto& [v, c] : coefficients)
            t += LinearTerm(v, c);
        return t;
    }

    Rational evaluate(const std::map<Variable, Integer>& values) const {
        Rational acc = constant;
        for (const auto& [v, c] : coefficients) {
            auto it = values.find(v);
            acc += c * Rational(it == values.end() ? Integer(0) : it->second);
        }
        return acc;
    }

    bool is_trivial() const { return coefficients.empty(); }

    bool operator==(const RankingFunction&) const = default;
};

/// One full loop iteration as a transition relation over current and primed
/// variables, plus the states reachable at the loop head.
struct LassoRelation {
    Cube stem_post;                       // over the program variables
    Cube loop_rel;                        // over variables and their primes
    std::vector<Variable> variables;      // tracked program variables
};

Variable primed(const Variable& v);

struct RankerResult {
    enum class Kind { Ranked, InfeasibleLoop, NoRankFound };

    Kind kind = Kind::NoRankFound;
    RankingFunction ranking;      // meaningful for Ranked (and 0 for InfeasibleLoop)
    Cube invariant;               // supporting invariant for Ranked
};

/// The module whose unique fair trace is u.v^omega: a chain of stem edges
/// into a cycle of loop edges, with the loop head both final and, when the
/// stem is empty, initial.
Module lasso_module_of(const LassoTrace& t);

/// Exact symbolic composition of the lasso into a relation; intermediate
/// values are projected out by Fourier-Motzkin.
LassoRelation summarize(const LassoTrace& t);

/// Searches an affine ranking function with supporting invariant via
/// Farkas-lemma constraints solved by the exact simplex. The invariant
/// template is the loop-invariant subset of the stem postcondition atoms,
/// optionally strengthened by one synthesized non-decreasing inequality.
/// Every Ranked result is re-validated against the logic engine before it is
/// returned; a validation failure is a hard internal error.
RankerResult synthesize(const LassoRelation& rel);

struct LassoAnalysis {
    RankerResult result;
    /// The trace the result certifies: the input, with an empty stem
    /// replaced by one unrolling, and the loop doubled when the first
    /// synthesis attempt failed.
    LassoTrace effective;
};

/// Full analysis pipeline for one counterexample lasso.
LassoAnalysis analyze_lasso(const LassoTrace& t);

}  // namespace termdec
