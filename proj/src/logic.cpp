#include "termdec/logic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace termdec {

namespace {

// ------------------------------------------------ solver representation ----
// Inequalities carry a strictness flag because negating `t <= 0` over the
// rationals yields `-t < 0`. Equalities are kept separate so elimination can
// substitute instead of pairing.

struct SolverIneq {
    LinearTerm term;  // term <= 0, or term < 0 when strict
    bool strict;
};

struct SolverSystem {
    std::vector<LinearTerm> eqs;  // term = 0
    std::vector<SolverIneq> ineqs;
    bool contradictory = false;

    void add_eq(LinearTerm t) {
        if (contradictory)
            return;
        if (t.is_constant()) {
            if (t.constant_part() != 0)
                contradictory = true;
            return;
        }
        eqs.push_back(std::move(t));
    }

    void add_ineq(LinearTerm t, bool strict) {
        if (contradictory)
            return;
        if (t.is_constant()) {
            bool ok = strict ? t.constant_part() < 0 : t.constant_part() <= 0;
            if (!ok)
                contradictory = true;
            return;
        }
        ineqs.push_back({std::move(t), strict});
    }

    void add_atom(const Atom& a) {
        if (a.rel() == Rel::EqZero)
            add_eq(a.term());
        else
            add_ineq(a.term(), false);
    }
};

constexpr std::size_t kMaxIntermediateIneqs = 2048;

/// Normalizes an inequality to coprime integer coefficients.
void normalize_ineq(SolverIneq& q) {
    Integer lcm_den = 1;
    for (const auto& [v, c] : q.term.coefficients())
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q.term.constant_part()));
    if (lcm_den != 1)
        q.term *= Rational(lcm_den);
    Integer g = boost::multiprecision::abs(numerator(q.term.constant_part()));
    for (const auto& [v, c] : q.term.coefficients())
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(numerator(c)));
    if (g > 1)
        q.term *= Rational(Integer(1), g);
}

/// True if q2 is implied by q1 alone (proportional variable parts).
bool implied_by(const SolverIneq& q1, const SolverIneq& q2) {
    if (q1.term.coefficients().empty() || q2.term.coefficients().empty())
        return false;
    // Find lambda > 0 with vars(q2) = lambda * vars(q1).
    const auto& c1 = q1.term.coefficients();
    const auto& c2 = q2.term.coefficients();
    if (c1.size() != c2.size())
        return false;
    auto it1 = c1.begin();
    auto it2 = c2.begin();
    Rational lambda = 0;
    for (; it1 != c1.end(); ++it1, ++it2) {
        if (it1->first != it2->first)
            return false;
        Rational ratio = it2->second / it1->second;
        if (lambda == 0)
            lambda = ratio;
        else if (ratio != lambda)
            return false;
    }
    if (lambda <= 0)
        return false;
    Rational d = q2.term.constant_part() - lambda * q1.term.constant_part();
    if (q2.strict)
        return d < 0 || (d == 0 && q1.strict);
    return d <= 0;
}

void prune_redundant(std::vector<SolverIneq>& ineqs) {
    // Deduplicate, then drop inequalities implied by another one alone.
    std::sort(ineqs.begin(), ineqs.end(), [](const SolverIneq& a, const SolverIneq& b) {
        return std::tie(a.term, a.strict) < std::tie(b.term, b.strict);
    });
    ineqs.erase(std::unique(ineqs.begin(), ineqs.end(),
                            [](const SolverIneq& a, const SolverIneq& b) {
                                return a.term == b.term && a.strict == b.strict;
                            }),
                ineqs.end());
    std::vector<bool> drop(ineqs.size(), false);
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        if (drop[i])
            continue;
        for (std::size_t j = 0; j < ineqs.size(); ++j) {
            if (i == j || drop[j])
                continue;
            if (implied_by(ineqs[i], ineqs[j]))
                drop[j] = true;
        }
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        if (drop[i])
            continue;
        if (k != i)
            ineqs[k] = std::move(ineqs[i]);
        ++k;
    }
    ineqs.resize(k);
}

/// Eliminates one variable in place.
void fm_eliminate_var(SolverSystem& sys, const Variable& v) {
    if (sys.contradictory)
        return;
    // Prefer substitution through an equality mentioning v.
    for (std::size_t i = 0; i < sys.eqs.size(); ++i) {
        Rational c = sys.eqs[i].coefficient(v);
        if (c == 0)
            continue;
        LinearTerm rhs = sys.eqs[i];
        rhs.set_coefficient(v, 0);
        rhs *= Rational(-1) / c;  // v = rhs
        std::vector<LinearTerm> eqs = std::move(sys.eqs);
        std::vector<SolverIneq> ineqs = std::move(sys.ineqs);
        sys.eqs.clear();
        sys.ineqs.clear();
        for (std::size_t j = 0; j < eqs.size(); ++j) {
            if (j == i)
                continue;
            sys.add_eq(eqs[j].substitute(v, rhs));
        }
        for (auto& q : ineqs)
            sys.add_ineq(q.term.substitute(v, rhs), q.strict);
        prune_redundant(sys.ineqs);
        return;
    }

    std::vector<SolverIneq> lowers, uppers, rest;
    for (auto& q : sys.ineqs) {
        Rational c = q.term.coefficient(v);
        if (c > 0)
            uppers.push_back(std::move(q));
        else if (c < 0)
            lowers.push_back(std::move(q));
        else
            rest.push_back(std::move(q));
    }
    sys.ineqs = std::move(rest);
    for (const SolverIneq& lo : lowers) {
        for (const SolverIneq& up : uppers) {
            Rational cl = lo.term.coefficient(v);  // < 0
            Rational cu = up.term.coefficient(v);  // > 0
            LinearTerm combined = lo.term * cu + up.term * (-cl);
            SolverIneq q{std::move(combined), lo.strict || up.strict};
            normalize_ineq(q);
            sys.add_ineq(std::move(q.term), q.strict);
            if (sys.ineqs.size() > kMaxIntermediateIneqs)
                throw PredicateSizeError("projection grew past the internal inequality cap");
        }
    }
    prune_redundant(sys.ineqs);
}

std::vector<Variable> system_variables(const SolverSystem& sys) {
    std::vector<Variable> vars;
    for (const auto& e : sys.eqs)
        for (const auto& [v, c] : e.coefficients())
            vars.push_back(v);
    for (const auto& q : sys.ineqs)
        for (const auto& [v, c] : q.term.coefficients())
            vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

bool solver_sat(SolverSystem sys) {
    if (sys.contradictory)
        return false;
    for (const Variable& v : system_variables(sys)) {
        fm_eliminate_var(sys, v);
        if (sys.contradictory)
            return false;
    }
    return !sys.contradictory;
}

SolverSystem system_of(const Cube& c) {
    SolverSystem sys;
    for (const Atom& a : c.atoms())
        sys.add_atom(a);
    return sys;
}

std::vector<Atom> atoms_of(const SolverSystem& sys) {
    // Strict inequalities cannot appear in public cubes; callers only convert
    // systems built from non-strict input.
    std::vector<Atom> out;
    for (const LinearTerm& e : sys.eqs)
        out.push_back(Atom::eq_zero(e));
    for (const SolverIneq& q : sys.ineqs) {
        assert(!q.strict);
        out.push_back(Atom::leq_zero(q.term));
    }
    return out;
}

bool cube_mentions_oldrnk(const std::vector<Atom>& atoms) {
    for (const Atom& a : atoms)
        if (a.mentions(kOldRnk))
            return true;
    return false;
}

// --------------------------------------------------------- entailment ------

struct EntailBudget {
    std::size_t remaining;

    void spend() {
        if (remaining == 0)
            throw EntailmentBudgetError("entailment case split passed the configured limit");
        --remaining;
    }
};

/// Checks base /\ not(d_0) /\ ... /\ not(d_k) unsatisfiable by branching
/// over one negated atom per disjunct.
bool refute_all(const SolverSystem& base, const std::vector<const std::vector<Atom>*>& disjuncts,
                std::size_t next, EntailBudget& budget) {
    budget.spend();
    if (!solver_sat(base))
        return true;
    if (next == disjuncts.size())
        return false;  // a satisfiable leaf: entailment fails
    const std::vector<Atom>& d = *disjuncts[next];
    // not(TRUE) is unsatisfiable: this branch cannot produce a countermodel.
    if (d.empty())
        return true;
    for (const Atom& a : d) {
        if (a.rel() == Rel::LeqZero) {
            SolverSystem s = base;
            s.add_ineq(-a.term(), true);  // t > 0
            if (!refute_all(s, disjuncts, next + 1, budget))
                return false;
        } else {
            SolverSystem s1 = base;
            s1.add_ineq(a.term(), true);  // t < 0
            if (!refute_all(s1, disjuncts, next + 1, budget))
                return false;
            SolverSystem s2 = base;
            s2.add_ineq(-a.term(), true);  // t > 0
            if (!refute_all(s2, disjuncts, next + 1, budget))
                return false;
        }
    }
    return true;
}

/// Rational entailment of a conjunction into a disjunction of conjunctions.
bool cube_entails_disjunction(const std::vector<Atom>& premise,
                              const std::vector<const std::vector<Atom>*>& disjuncts,
                              EntailBudget& budget) {
    SolverSystem base;
    for (const Atom& a : premise)
        base.add_atom(a);
    return refute_all(base, disjuncts, 0, budget);
}

Cube post_assign_cube(const Cube& c, const Variable& v, const LinearTerm& rhs, OldrnkMode result_mode) {
    static const Variable fresh("@pre");
    SolverSystem sys;
    bool cube_uses_v = c.mentions(v);
    bool rhs_uses_v = rhs.mentions(v);
    for (const Atom& a : c.atoms()) {
        if (cube_uses_v && a.mentions(v)) {
            Atom renamed(a.term().rename(v, fresh), a.rel());
            sys.add_atom(renamed);
        } else {
            sys.add_atom(a);
        }
    }
    LinearTerm rhs_pre = rhs_uses_v ? rhs.rename(v, fresh) : rhs;
    sys.add_eq(LinearTerm(v) - rhs_pre);
    if (cube_uses_v || rhs_uses_v)
        fm_eliminate_var(sys, fresh);
    if (sys.contradictory)
        return Cube({Atom::leq_zero(LinearTerm::constant(1))}, result_mode);
    return Cube(atoms_of(sys), result_mode);
}

}  // namespace

// ----------------------------------------------------------------- Cube ----

Cube::Cube(std::vector<Atom> atoms, OldrnkMode mode) : atoms_(std::move(atoms)), mode_(mode) {
    std::erase_if(atoms_, [](const Atom& a) { return a.is_trivially_true(); });
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    if (atoms_.size() > Predicate::kMaxAtomsPerCube)
        throw PredicateSizeError("cube grew past " + std::to_string(Predicate::kMaxAtomsPerCube) + " atoms");
    if (mode_ != OldrnkMode::Finite && cube_mentions_oldrnk(atoms_))
        throw std::logic_error("oldrnk atom in a non-finite cube");
}

bool Cube::mentions(const Variable& v) const {
    for (const Atom& a : atoms_)
        if (a.mentions(v))
            return true;
    return false;
}

Cube Cube::with_mode(OldrnkMode m) const { return Cube(atoms_, m); }

Cube Cube::conjoin(const std::vector<Atom>& more) const {
    std::vector<Atom> merged = atoms_;
    merged.insert(merged.end(), more.begin(), more.end());
    return Cube(std::move(merged), mode_);
}

Predicate::Predicate(std::vector<Cube> cubes) : cubes_(std::move(cubes)) {
    std::sort(cubes_.begin(), cubes_.end());
    cubes_.erase(std::unique(cubes_.begin(), cubes_.end()), cubes_.end());
    if (cubes_.size() > kMaxCubes)
        throw PredicateSizeError("predicate grew past " + std::to_string(kMaxCubes) + " cubes");
}

// ------------------------------------------------------------ operations ---

bool is_sat(const Cube& c) { return solver_sat(system_of(c)); }

bool is_sat(const Predicate& p) {
    for (const Cube& c : p.cubes())
        if (is_sat(c))
            return true;
    return false;
}

Cube eliminate(const Cube& c, const Variable& v) {
    SolverSystem sys = system_of(c);
    fm_eliminate_var(sys, v);
    if (sys.contradictory)
        return Cube({Atom::leq_zero(LinearTerm::constant(1))}, c.mode());
    return Cube(atoms_of(sys), c.mode());
}

Predicate strongest_post(const Predicate& p, Statement st) {
    std::vector<Cube> out;
    auto keep_if_sat = [&out](Cube c) {
        if (is_sat(c))
            out.push_back(std::move(c));
    };
    for (const Cube& c : p.cubes()) {
        switch (st.kind()) {
        case StatementKind::Assume: {
            std::vector<Atom> plain;
            std::vector<Atom> oldrnk_atoms;
            for (const Atom& a : st.guard())
                (a.mentions(kOldRnk) ? oldrnk_atoms : plain).push_back(a);
            if (oldrnk_atoms.empty() || c.mode() == OldrnkMode::Finite) {
                std::vector<Atom> merged = plain;
                merged.insert(merged.end(), oldrnk_atoms.begin(), oldrnk_atoms.end());
                keep_if_sat(c.conjoin(merged));
                break;
            }
            // Guards over oldrnk against a cube that does not pin it to a
            // rational: evaluate the oldrnk part at infinity for the Inf
            // case and keep a Finite split for Absent cubes.
            auto infinity_case_alive = [&]() {
                for (const Atom& a : oldrnk_atoms) {
                    Rational c_old = a.term().coefficient(kOldRnk);
                    if (a.rel() == Rel::EqZero && c_old != 0)
                        return false;
                    if (a.rel() == Rel::LeqZero && c_old > 0)
                        return false;
                }
                return true;
            };
            if (c.mode() == OldrnkMode::Inf) {
                if (infinity_case_alive())
                    keep_if_sat(c.conjoin(plain));
                break;
            }
            // Absent mode: infinity branch plus finite branch.
            if (infinity_case_alive())
                keep_if_sat(Cube(c.atoms(), OldrnkMode::Inf).conjoin(plain));
            std::vector<Atom> merged = plain;
            merged.insert(merged.end(), oldrnk_atoms.begin(), oldrnk_atoms.end());
            keep_if_sat(Cube(c.atoms(), OldrnkMode::Finite).conjoin(merged));
            break;
        }
        case StatementKind::Assign: {
            if (st.lhs() == kOldRnk) {
                // Overwrites whatever oldrnk was, including infinity.
                Cube base = c.mode() == OldrnkMode::Finite
                                ? post_assign_cube(c, kOldRnk, st.rhs(), OldrnkMode::Finite)
                                : Cube(c.atoms(), OldrnkMode::Finite)
                                      .conjoin({Atom::eq_zero(LinearTerm(kOldRnk) - st.rhs())});
                keep_if_sat(std::move(base));
                break;
            }
            keep_if_sat(post_assign_cube(c, st.lhs(), st.rhs(), c.mode()));
            break;
        }
        case StatementKind::Havoc: {
            if (st.lhs() == kOldRnk) {
                Cube dropped = c.mode() == OldrnkMode::Finite ? eliminate(c, kOldRnk) : c;
                keep_if_sat(dropped.with_mode(OldrnkMode::Absent));
                break;
            }
            keep_if_sat(eliminate(c, st.lhs()));
            break;
        }
        }
    }
    return Predicate(std::move(out));
}

Predicate strongest_post_rank_update(const Predicate& p, const LinearTerm& f) {
    std::vector<Cube> out;
    for (const Cube& c : p.cubes()) {
        Cube next = c.mode() == OldrnkMode::Finite
                        ? post_assign_cube(c, kOldRnk, f, OldrnkMode::Finite)
                        : Cube(c.atoms(), OldrnkMode::Finite).conjoin({Atom::eq_zero(LinearTerm(kOldRnk) - f)});
        if (is_sat(next))
            out.push_back(std::move(next));
    }
    return Predicate(std::move(out));
}

bool entails(const Predicate& p, const Predicate& q, std::size_t budget) {
    EntailBudget b{budget};
    for (const Cube& c : p.cubes()) {
        // The infinity part of c must land in the infinity part of q, the
        // finite part in the finite part.
        if (c.mode() == OldrnkMode::Inf || c.mode() == OldrnkMode::Absent) {
            std::vector<const std::vector<Atom>*> targets;
            for (const Cube& d : q.cubes())
                if (d.mode() == OldrnkMode::Inf || d.mode() == OldrnkMode::Absent)
                    targets.push_back(&d.atoms());
            if (!cube_entails_disjunction(c.atoms(), targets, b))
                return false;
        }
        if (c.mode() == OldrnkMode::Finite || c.mode() == OldrnkMode::Absent) {
            std::vector<const std::vector<Atom>*> targets;
            for (const Cube& d : q.cubes())
                if (d.mode() == OldrnkMode::Finite || d.mode() == OldrnkMode::Absent)
                    targets.push_back(&d.atoms());
            if (!cube_entails_disjunction(c.atoms(), targets, b))
                return false;
        }
    }
    return true;
}

bool hoare_valid(const Predicate& pre, Statement st, const Predicate& post) {
    return entails(strongest_post(pre, st), post);
}

bool hoare_valid_with_rank_update(const Predicate& pre, const LinearTerm& f, Statement st,
                                  const Predicate& post) {
    return entails(strongest_post(strongest_post_rank_update(pre, f), st), post);
}

bool evaluate(const Cube& c, const Valuation& nu) {
    bool infinite = !nu.oldrnk.has_value();
    if (infinite && c.mode() == OldrnkMode::Finite)
        return false;
    if (!infinite && c.mode() == OldrnkMode::Inf)
        return false;
    auto lookup = [&nu](const Variable& v) -> Rational {
        if (v == kOldRnk) {
            assert(nu.oldrnk.has_value());
            return Rational(*nu.oldrnk);
        }
        auto it = nu.values.find(v);
        return it == nu.values.end() ? Rational(0) : Rational(it->second);
    };
    for (const Atom& a : c.atoms())
        if (!a.holds(lookup))
            return false;
    return true;
}

bool evaluate(const Predicate& p, const Valuation& nu) {
    for (const Cube& c : p.cubes())
        if (evaluate(c, nu))
            return true;
    return false;
}

Predicate rank_strictly_below_oldrnk(const LinearTerm& f) {
    std::vector<Cube> cubes;
    cubes.push_back(Cube::top(OldrnkMode::Inf));
    cubes.push_back(Cube({Atom::leq_zero(f - LinearTerm(kOldRnk) + LinearTerm::constant(1)),
                          Atom::leq_zero(-LinearTerm(kOldRnk))},
                         OldrnkMode::Finite));
    return Predicate(std::move(cubes));
}

std::string to_string(const Cube& c) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    if (c.mode() == OldrnkMode::Inf) {
        os << "oldrnk == INF";
        first = false;
    }
    for (const Atom& a : c.atoms()) {
        if (!first)
            os << " && ";
        os << to_string(a);
        first = false;
    }
    if (first)
        os << "true";
    os << "}";
    return os.str();
}

std::string to_string(const Predicate& p) {
    if (p.is_false())
        return "{false}";
    std::ostringstream os;
    bool first = true;
    for (const Cube& c : p.cubes()) {
        if (!first)
            os << " || ";
        os << to_string(c);
        first = false;
    }
    return os.str();
}

}  // namespace termdec
