#include "termdec/ranker.hpp"

#include <algorithm>
#include <sstream>

namespace termdec {

Variable primed(const Variable& v) { return Variable(v.name() + "'"); }

Module lasso_module_of(const LassoTrace& t) {
    if (t.loop.empty())
        throw std::invalid_argument("lasso loop must be non-empty");
    std::size_t n = t.stem.size() + t.loop.size();
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("p" + std::to_string(i));
    auto head = static_cast<Location>(t.stem.size());
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < t.stem.size(); ++i)
        edges.push_back({static_cast<Location>(i), t.stem[i], static_cast<Location>(i + 1)});
    for (std::size_t i = 0; i < t.loop.size(); ++i) {
        auto src = static_cast<Location>(t.stem.size() + i);
        auto dst = i + 1 == t.loop.size() ? head : static_cast<Location>(t.stem.size() + i + 1);
        edges.push_back({src, t.loop[i], dst});
    }
    return Module(Program(std::move(names), 0, std::move(edges)), head);
}

namespace {

std::vector<Variable> trace_variables(const LassoTrace& t) {
    std::vector<Variable> vars;
    for (Statement st : t.stem)
        for (Variable v : st.variables())
            vars.push_back(std::move(v));
    for (Statement st : t.loop)
        for (Variable v : st.variables())
            vars.push_back(std::move(v));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

Cube single_cube(const Predicate& p, OldrnkMode mode) {
    if (p.is_false())
        return Cube({Atom::leq_zero(LinearTerm::constant(1))}, mode);
    return p.cubes().front();
}

/// Renames every variable of an atom with the given map.
Atom rename_atom(const Atom& a, const std::map<Variable, Variable>& renaming) {
    LinearTerm t = LinearTerm::constant(a.term().constant_part());
    for (const auto& [v, c] : a.term().coefficients()) {
        auto it = renaming.find(v);
        t += LinearTerm(it == renaming.end() ? v : it->second, c);
    }
    return Atom(t, a.rel());
}

}  // namespace

LassoRelation summarize(const LassoTrace& t) {
    LassoRelation rel;
    rel.variables = trace_variables(t);

    Predicate post = Predicate::top();
    for (Statement st : t.stem)
        post = strongest_post(post, st);
    rel.stem_post = single_cube(post, OldrnkMode::Absent);

    // Symbolic composition of the loop: track the current value of each
    // variable as a term over the pre-state variables and havoc symbols,
    // collect guard constraints, then bind the primes and project the
    // symbols out.
    std::map<Variable, LinearTerm> current;
    for (const Variable& v : rel.variables)
        current.emplace(v, LinearTerm(v));
    auto value_of = [&current](const Variable& v) {
        auto it = current.find(v);
        return it == current.end() ? LinearTerm(v) : it->second;
    };
    std::vector<Atom> constraints;
    std::vector<Variable> symbols;
    int next_symbol = 0;
    for (Statement st : t.loop) {
        switch (st.kind()) {
        case StatementKind::Assume:
            for (const Atom& a : st.guard()) {
                LinearTerm substituted = LinearTerm::constant(a.term().constant_part());
                for (const auto& [v, c] : a.term().coefficients())
                    substituted += value_of(v) * c;
                constraints.emplace_back(substituted, a.rel());
            }
            break;
        case StatementKind::Assign: {
            LinearTerm rhs = LinearTerm::constant(st.rhs().constant_part());
            for (const auto& [v, c] : st.rhs().coefficients())
                rhs += value_of(v) * c;
            current[st.lhs()] = std::move(rhs);
            break;
        }
        case StatementKind::Havoc: {
            Variable sym("@h" + std::to_string(next_symbol++));
            symbols.push_back(sym);
            current[st.lhs()] = LinearTerm(sym);
            break;
        }
        }
    }
    for (const Variable& v : rel.variables)
        constraints.push_back(Atom::eq_zero(LinearTerm(primed(v)) - value_of(v)));

    Cube composed(std::move(constraints), OldrnkMode::Absent);
    for (const Variable& s : symbols)
        composed = eliminate(composed, s);
    rel.loop_rel = std::move(composed);
    return rel;
}

namespace {

// ------------------------------------------------- Farkas system builder ---

/// Builds Farkas feasibility systems: each requirement "premises |= target
/// >= 0" becomes exact linear constraints over the template unknowns and one
/// fresh multiplier vector. Premise atoms t <= 0 contribute -t with a
/// nonnegative multiplier, equalities with a free one.
class FarkasSystem {
  public:
    Variable fresh(const std::string& hint) {
        return Variable("#" + hint + "_" + std::to_string(counter_++));
    }

    /// target: affine combination of unknown-coefficient terms; represented
    /// as a map decision-variable -> coefficient-per-program-variable plus
    /// direct program-variable coefficients. For simplicity the caller
    /// provides the target as a LinearTerm over *mixed* variables where
    /// program variables stand for themselves and decision variables are
    /// carried through `unknown_terms`: see require().
    struct Target {
        // Coefficient of each program variable: an affine expression over
        // decision variables.
        std::map<Variable, LinearTerm> var_coeff;
        LinearTerm constant;  // affine over decision variables
    };

    /// Adds constraints encoding: conj(premises) |= target >= 0.
    void require(const std::vector<Atom>& premises, const Target& target) {
        std::string tag = "r" + std::to_string(requirement_++);
        // target - sum(lambda_i * p_i) - slack == 0 per program variable and
        // constant, with p_i the >=0 form of each premise.
        std::map<Variable, LinearTerm> residual = target.var_coeff;
        LinearTerm const_residual = target.constant;
        int i = 0;
        for (const Atom& a : premises) {
            Variable lambda = fresh(tag + "_l" + std::to_string(i++));
            if (a.rel() == Rel::LeqZero)
                atoms_.push_back(Atom::leq_zero(-LinearTerm(lambda)));  // lambda >= 0
            // p = -term for inequalities (so p >= 0), term itself for
            // equalities with a free multiplier.
            Rational sign = a.rel() == Rel::LeqZero ? Rational(-1) : Rational(1);
            for (const auto& [v, c] : a.term().coefficients())
                residual[v] -= LinearTerm(lambda, sign * c);
            const_residual -= LinearTerm(lambda, sign * a.term().constant_part());
        }
        Variable slack = fresh(tag + "_d");
        atoms_.push_back(Atom::leq_zero(-LinearTerm(slack)));  // slack >= 0
        const_residual -= LinearTerm(slack);
        for (const auto& [v, expr] : residual)
            atoms_.push_back(Atom::eq_zero(expr));
        atoms_.push_back(Atom::eq_zero(const_residual));
    }

    std::optional<std::map<Variable, Rational>> solve() const { return lp_feasible(atoms_); }

  private:
    std::vector<Atom> atoms_;
    int counter_ = 0;
    int requirement_ = 0;
};

FarkasSystem::Target affine_target(const std::vector<Variable>& program_vars,
                                   const std::map<Variable, Variable>& coeff_vars,
                                   const Variable& const_var) {
    FarkasSystem::Target t;
    for (const Variable& v : program_vars) {
        auto it = coeff_vars.find(v);
        if (it != coeff_vars.end())
            t.var_coeff[v] = LinearTerm(it->second);
        else
            t.var_coeff[v] = LinearTerm();
    }
    t.constant = LinearTerm(const_var);
    return t;
}

struct Templates {
    std::map<Variable, Variable> f_coeff;   // per program variable
    Variable f_const{"#f0"};
    std::map<Variable, Variable> g_coeff;
    Variable g_const{"#g0"};
};

/// Scales rational coefficients up to integers (never down: the unit
/// decrease must be preserved).
RankingFunction extract_ranking(const std::map<Variable, Rational>& solution, const Templates& tmpl) {
    RankingFunction f;
    auto get = [&solution](const Variable& v) {
        auto it = solution.find(v);
        return it == solution.end() ? Rational(0) : it->second;
    };
    Integer scale = 1;
    for (const auto& [pv, cv] : tmpl.f_coeff)
        scale = boost::multiprecision::lcm(scale, denominator(get(cv)));
    scale = boost::multiprecision::lcm(scale, denominator(get(tmpl.f_const)));
    for (const auto& [pv, cv] : tmpl.f_coeff) {
        Rational c = get(cv) * Rational(scale);
        if (c != 0)
            f.coefficients[pv] = c;
    }
    f.constant = get(tmpl.f_const) * Rational(scale);
    return f;
}

std::optional<Atom> extract_invariant_atom(const std::map<Variable, Rational>& solution,
                                           const Templates& tmpl) {
    auto get = [&solution](const Variable& v) {
        auto it = solution.find(v);
        return it == solution.end() ? Rational(0) : it->second;
    };
    LinearTerm g = LinearTerm::constant(get(tmpl.g_const));
    for (const auto& [pv, cv] : tmpl.g_coeff)
        g += LinearTerm(pv, get(cv));
    if (g.is_constant())
        return std::nullopt;
    return Atom::leq_zero(-g);  // g >= 0
}

std::vector<Atom> primed_atoms(const std::vector<Atom>& atoms, const std::vector<Variable>& vars) {
    std::map<Variable, Variable> renaming;
    for (const Variable& v : vars)
        renaming.emplace(v, primed(v));
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const Atom& a : atoms)
        out.push_back(rename_atom(a, renaming));
    return out;
}

/// Largest subset of the candidate atoms that is inductive under the loop.
std::vector<Atom> invariant_subset(std::vector<Atom> candidates, const Cube& loop_rel,
                                   const std::vector<Variable>& vars) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::vector<Atom> premise = candidates;
            premise.insert(premise.end(), loop_rel.atoms().begin(), loop_rel.atoms().end());
            std::map<Variable, Variable> renaming;
            for (const Variable& v : vars)
                renaming.emplace(v, primed(v));
            Atom target = rename_atom(candidates[i], renaming);
            bool inductive = entails(Predicate(Cube(std::move(premise))), Predicate(Cube({target})));
            if (!inductive) {
                candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return candidates;
}

void validate_ranked(const LassoRelation& rel, const RankingFunction& f, const Cube& inv) {
    // (i) the stem postcondition entails the invariant,
    // (ii) the invariant is inductive under the loop,
    // (iii) the loop is bounded by f and decreases it by at least one.
    Predicate stem_pred{Cube(rel.stem_post.atoms())};
    Predicate inv_pred{Cube(inv.atoms())};
    if (!entails(stem_pred, inv_pred))
        throw std::logic_error("ranking validation failed: stem does not establish the invariant");
    std::vector<Atom> premise = inv.atoms();
    premise.insert(premise.end(), rel.loop_rel.atoms().begin(), rel.loop_rel.atoms().end());
    Predicate prem{Cube(premise)};
    if (!entails(prem, Predicate(Cube(primed_atoms(inv.atoms(), rel.variables)))))
        throw std::logic_error("ranking validation failed: invariant is not inductive");
    LinearTerm ft = f.as_term();
    std::map<Variable, Variable> renaming;
    for (const Variable& v : rel.variables)
        renaming.emplace(v, primed(v));
    LinearTerm ft_primed = LinearTerm::constant(ft.constant_part());
    for (const auto& [v, c] : ft.coefficients())
        ft_primed += LinearTerm(renaming.count(v) ? renaming[v] : v, c);
    std::vector<Atom> goal{Atom::leq_zero(-ft),                                      // f >= 0
                           Atom::leq_zero(ft_primed - ft + LinearTerm::constant(1))};  // f - f' >= 1
    if (!entails(prem, Predicate(Cube(goal))))
        throw std::logic_error("ranking validation failed: bound or decrease condition");
}

}  // namespace

RankerResult synthesize(const LassoRelation& rel) {
    {
        std::vector<Atom> combined = rel.stem_post.atoms();
        combined.insert(combined.end(), rel.loop_rel.atoms().begin(), rel.loop_rel.atoms().end());
        if (!is_sat(Cube(std::move(combined))))
            return RankerResult{RankerResult::Kind::InfeasibleLoop, RankingFunction{}, Cube()};
    }

    std::vector<Atom> inv_base = invariant_subset(rel.stem_post.atoms(), rel.loop_rel, rel.variables);

    Templates tmpl;
    for (const Variable& v : rel.variables) {
        tmpl.f_coeff.emplace(v, Variable("#f_" + v.name()));
        tmpl.g_coeff.emplace(v, Variable("#g_" + v.name()));
    }

    // The weakest workable invariant gives the most general module (an empty
    // one lets every stem annotation collapse to "oldrnk is infinite"), so
    // try the loop relation alone before adding stem knowledge.
    if (!inv_base.empty()) {
        FarkasSystem sys;
        std::vector<Atom> bare = rel.loop_rel.atoms();
        FarkasSystem::Target bound0;
        FarkasSystem::Target dec0;
        for (const Variable& v : rel.variables) {
            bound0.var_coeff[v] = LinearTerm(tmpl.f_coeff.at(v));
            dec0.var_coeff[v] = LinearTerm(tmpl.f_coeff.at(v));
            dec0.var_coeff[primed(v)] = -LinearTerm(tmpl.f_coeff.at(v));
        }
        bound0.constant = LinearTerm(tmpl.f_const);
        dec0.constant = -LinearTerm::constant(1);
        sys.require(bare, bound0);
        sys.require(bare, dec0);
        if (auto sol = sys.solve()) {
            RankingFunction f = extract_ranking(*sol, tmpl);
            Cube inv;
            validate_ranked(rel, f, inv);
            return RankerResult{RankerResult::Kind::Ranked, std::move(f), std::move(inv)};
        }
    }

    std::vector<Atom> premise = inv_base;
    premise.insert(premise.end(), rel.loop_rel.atoms().begin(), rel.loop_rel.atoms().end());

    auto bound_target = [&](int mu_g) {
        // f - mu_g * g >= 0
        FarkasSystem::Target t;
        for (const Variable& v : rel.variables) {
            t.var_coeff[v] = LinearTerm(tmpl.f_coeff.at(v));
            if (mu_g)
                t.var_coeff[v] -= LinearTerm(tmpl.g_coeff.at(v));
            t.var_coeff.emplace(primed(v), LinearTerm());
        }
        t.constant = LinearTerm(tmpl.f_const);
        if (mu_g)
            t.constant -= LinearTerm(tmpl.g_const);
        return t;
    };
    auto decrease_target = [&](int mu_g) {
        // f - f' - 1 - mu_g * g >= 0
        FarkasSystem::Target t;
        for (const Variable& v : rel.variables) {
            t.var_coeff[v] = LinearTerm(tmpl.f_coeff.at(v));
            if (mu_g)
                t.var_coeff[v] -= LinearTerm(tmpl.g_coeff.at(v));
            t.var_coeff[primed(v)] = -LinearTerm(tmpl.f_coeff.at(v));
        }
        t.constant = -LinearTerm::constant(1);
        if (mu_g)
            t.constant -= LinearTerm(tmpl.g_const);
        return t;
    };

    // Plain attempt: invariant = inductive stem atoms only.
    {
        FarkasSystem sys;
        sys.require(premise, bound_target(0));
        sys.require(premise, decrease_target(0));
        if (auto sol = sys.solve()) {
            RankingFunction f = extract_ranking(*sol, tmpl);
            Cube inv(inv_base);
            validate_ranked(rel, f, inv);
            return RankerResult{RankerResult::Kind::Ranked, std::move(f), std::move(inv)};
        }
    }

    // Strengthened attempts: one synthesized non-decreasing inequality g >= 0
    // established by the stem, with fixed multipliers for g in the bound and
    // decrease conditions.
    for (auto [mu_bound, mu_decrease] : {std::pair{1, 1}, std::pair{1, 0}, std::pair{0, 1}}) {
        FarkasSystem sys;
        // stem_post |= g >= 0
        FarkasSystem::Target g_target;
        for (const Variable& v : rel.variables)
            g_target.var_coeff[v] = LinearTerm(tmpl.g_coeff.at(v));
        g_target.constant = LinearTerm(tmpl.g_const);
        sys.require(rel.stem_post.atoms(), g_target);
        // inv_base /\ loop_rel |= g' - g >= 0
        FarkasSystem::Target nondec;
        for (const Variable& v : rel.variables) {
            nondec.var_coeff[primed(v)] = LinearTerm(tmpl.g_coeff.at(v));
            nondec.var_coeff[v] = -LinearTerm(tmpl.g_coeff.at(v));
        }
        nondec.constant = LinearTerm();
        sys.require(premise, nondec);
        sys.require(premise, bound_target(mu_bound));
        sys.require(premise, decrease_target(mu_decrease));
        if (auto sol = sys.solve()) {
            RankingFunction f = extract_ranking(*sol, tmpl);
            std::vector<Atom> inv_atoms = inv_base;
            if (auto g_atom = extract_invariant_atom(*sol, tmpl))
                inv_atoms.push_back(*g_atom);
            Cube inv(std::move(inv_atoms));
            validate_ranked(rel, f, inv);
            return RankerResult{RankerResult::Kind::Ranked, std::move(f), std::move(inv)};
        }
    }

    return RankerResult{RankerResult::Kind::NoRankFound, RankingFunction{}, Cube()};
}

LassoAnalysis analyze_lasso(const LassoTrace& t) {
    LassoTrace base = t;
    if (base.stem.empty()) {
        // Unroll once so the loop head is not the initial location; the
        // omega-word is unchanged.
        base.stem = base.loop;
    }
    LassoRelation rel = summarize(base);
    RankerResult r = synthesize(rel);
    if (r.kind != RankerResult::Kind::NoRankFound)
        return {std::move(r), std::move(base)};

    LassoTrace doubled = base;
    doubled.loop.insert(doubled.loop.end(), base.loop.begin(), base.loop.end());
    LassoRelation rel2 = summarize(doubled);
    RankerResult r2 = synthesize(rel2);
    if (r2.kind != RankerResult::Kind::NoRankFound)
        return {std::move(r2), std::move(doubled)};
    return {std::move(r), std::move(base)};
}

}  // namespace termdec
