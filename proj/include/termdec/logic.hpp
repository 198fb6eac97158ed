#pragma once

#include "termdec/errors.hpp"
#include "termdec/statement.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace termdec {

/// How a cube constrains the auxiliary variable oldrnk. Infinity is a mode,
/// never an atom: in Inf mode oldrnk has the value above every rational; in
/// Finite mode it is an ordinary rational variable that atoms may mention;
/// Absent cubes leave it unconstrained.
enum class OldrnkMode {
    Absent,
    Finite,
    Inf,
};

/// A conjunction of atoms plus the oldrnk mode. Atoms are kept sorted and
/// deduplicated; trivially true atoms are dropped.
class Cube {
  public:
    Cube() = default;
    explicit Cube(std::vector<Atom> atoms, OldrnkMode mode = OldrnkMode::Absent);

    static Cube top(OldrnkMode mode = OldrnkMode::Absent) { return Cube({}, mode); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    OldrnkMode mode() const { return mode_; }

    bool mentions(const Variable& v) const;
    Cube with_mode(OldrnkMode m) const;
    Cube conjoin(const std::vector<Atom>& more) const;

    bool operator==(const Cube& o) const { return mode_ == o.mode_ && atoms_ == o.atoms_; }
    bool operator<(const Cube& o) const {
        if (mode_ != o.mode_)
            return mode_ < o.mode_;
        return std::lexicographical_compare(atoms_.begin(), atoms_.end(), o.atoms_.begin(), o.atoms_.end());
    }

  private:
    std::vector<Atom> atoms_;
    OldrnkMode mode_ = OldrnkMode::Absent;
};

/// A finite disjunction of cubes. FALSE is the empty disjunction; TRUE is a
/// single empty Absent cube. At most kMaxCubes cubes are allowed.
class Predicate {
  public:
    static constexpr std::size_t kMaxCubes = 4;
    static constexpr std::size_t kMaxAtomsPerCube = 64;

    Predicate() = default;
    explicit Predicate(std::vector<Cube> cubes);
    explicit Predicate(Cube c) : Predicate(std::vector<Cube>{std::move(c)}) {}

    static Predicate top() { return Predicate(Cube::top()); }
    static Predicate bottom() { return Predicate(); }

    const std::vector<Cube>& cubes() const { return cubes_; }
    bool is_false() const { return cubes_.empty(); }

    bool operator==(const Predicate&) const = default;

  private:
    std::vector<Cube> cubes_;
};

/// A total assignment of integers to the program variables; oldrnk is either
/// an integer or infinity (nullopt).
struct Valuation {
    std::map<Variable, Integer> values;
    std::optional<Integer> oldrnk = 0;

    static Valuation with_infinite_oldrnk(std::map<Variable, Integer> vals) {
        return Valuation{std::move(vals), std::nullopt};
    }
};

/// Rational satisfiability of a cube's atoms.
bool is_sat(const Cube& c);
bool is_sat(const Predicate& p);

/// Fourier-Motzkin projection: the result is satisfied by exactly the
/// rational points that extend to a satisfying value of v.
Cube eliminate(const Cube& c, const Variable& v);

/// Exact strongest postcondition over the rationals. Unsatisfiable result
/// cubes are dropped.
Predicate strongest_post(const Predicate& p, Statement st);

/// Post of the synthetic rank-tracking update oldrnk := f. The mode of each
/// cube becomes Finite.
Predicate strongest_post_rank_update(const Predicate& p, const LinearTerm& f);

/// Rational entailment: every point of p satisfies q.
/// Throws EntailmentBudgetError when the case split passes `budget` leaves.
bool entails(const Predicate& p, const Predicate& q, std::size_t budget = 1 << 16);

/// Validity of {pre} st {post}.
bool hoare_valid(const Predicate& pre, Statement st, const Predicate& post);

/// Validity of {pre} oldrnk := f; st {post}.
bool hoare_valid_with_rank_update(const Predicate& pre, const LinearTerm& f, Statement st,
                                  const Predicate& post);

/// Membership of a valuation in the predicate. An infinite oldrnk matches
/// only Inf and Absent cubes.
bool evaluate(const Predicate& p, const Valuation& nu);
bool evaluate(const Cube& c, const Valuation& nu);

/// The predicate "f is strictly below oldrnk in the rank order": satisfied
/// when oldrnk is infinite, or when f <= oldrnk - 1 and oldrnk >= 0.
Predicate rank_strictly_below_oldrnk(const LinearTerm& f);

/// {i - j <= oldrnk && i - j >= 0} style rendering; cubes joined by " || ".
std::string to_string(const Cube& c);
std::string to_string(const Predicate& p);

}  // namespace termdec
