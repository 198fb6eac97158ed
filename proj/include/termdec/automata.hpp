#pragma once

#include "termdec/errors.hpp"
#include "termdec/program.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace termdec {

using StateId = std::uint32_t;

/// An ultimately periodic trace u.v^omega.
struct LassoTrace {
    std::vector<Statement> stem;
    std::vector<Statement> loop;  // non-empty

    /// Canonical representation of the omega-word: the loop is reduced to
    /// its primitive period and the stem is shortened by rotating the loop.
    /// Two lassos denote the same omega-word iff their canonical forms are
    /// equal.
    LassoTrace canonical() const;

    bool operator==(const LassoTrace&) const = default;
};

std::string to_string(const LassoTrace& t);

/// Exploration limits shared by the automaton algorithms.
struct ExploreLimits {
    std::size_t max_states = 1u << 20;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void check_deadline() const {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw TimeoutError("automaton exploration deadline exceeded");
    }
};

/// On-demand automaton interface. Successor lists are memoized by the
/// implementations and stay valid for the lifetime of the view. Mutation is
/// single-writer: the driver queries views from one thread.
class AutomatonView {
  public:
    virtual ~AutomatonView() = default;

    virtual const std::vector<Statement>& alphabet() const = 0;
    virtual const std::vector<StateId>& initial_states() = 0;
    virtual bool accepting(StateId s) = 0;
    virtual const std::vector<StateId>& successors(StateId s, Statement st) = 0;
    /// Upper bound on the number of states (exact for explicit automata).
    virtual std::size_t state_count_bound() const = 0;

    /// Optional order for emptiness-search pruning: two states with equal
    /// keys and pointwise-ordered ranks satisfy "every run from the smaller
    /// is matched by a run from the larger, visiting accepting states in the
    /// same positions". Returns false when no such structure exists.
    virtual bool subsumption_info(StateId s, std::vector<std::uint64_t>* key,
                                  std::vector<std::int32_t>* ranks) {
        (void)s, (void)key, (void)ranks;
        return false;
    }
};

/// An explicit Büchi automaton over the statement alphabet. Transitions may
/// be nondeterministic and non-total.
class Buchi {
  public:
    Buchi() = default;
    Buchi(std::vector<std::string> state_names, std::vector<Statement> alphabet,
          std::vector<StateId> initial, std::vector<bool> accepting,
          std::vector<std::tuple<StateId, Statement, StateId>> transitions);

    std::size_t state_count() const { return state_names_.size(); }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::vector<Statement>& alphabet() const { return alphabet_; }
    const std::vector<StateId>& initial() const { return initial_; }
    bool accepting(StateId s) const { return accepting_[s]; }
    const std::vector<bool>& accepting_states() const { return accepting_; }
    const std::vector<std::tuple<StateId, Statement, StateId>>& transitions() const { return transitions_; }

    const std::vector<StateId>& successors(StateId s, Statement st) const;

  private:
    std::vector<std::string> state_names_;
    std::vector<Statement> alphabet_;
    std::vector<StateId> initial_;
    std::vector<bool> accepting_;
    std::vector<std::tuple<StateId, Statement, StateId>> transitions_;
    // (state, statement id) -> sorted successor list
    std::map<std::pair<StateId, std::uint32_t>, std::vector<StateId>> index_;
    std::vector<StateId> empty_;
};

std::shared_ptr<AutomatonView> as_view(Buchi b);

/// Lazy two-phase intersection; languages intersect, alphabets must match.
std::shared_ptr<AutomatonView> intersect_view(std::shared_ptr<AutomatonView> a,
                                              std::shared_ptr<AutomatonView> b);

/// Lazy rank-based complement with max rank 2n; successors are computed on
/// demand and memoized, macro states are pruned by subsumption. Throws
/// StateBudgetError past `state_budget` macro states.
std::shared_ptr<AutomatonView> complement_view(std::shared_ptr<AutomatonView> a,
                                               std::size_t state_budget);

/// Explores every reachable state over the full alphabet.
Buchi materialize(AutomatonView& view, const ExploreLimits& limits = {});

Buchi program_to_buchi(const Program& p);
Buchi module_to_buchi(const Module& m);
Buchi intersect(const Buchi& a, const Buchi& b);
Buchi complement(const Buchi& a, std::size_t state_budget = 1u << 20);

/// nullopt iff the language is empty; otherwise a short accepted lasso
/// (shortest stem to an accepting state, then its shortest cycle, ties by
/// lexicographically least statement-id sequence).
std::optional<LassoTrace> is_empty(AutomatonView& view, const ExploreLimits& limits = {});
std::optional<LassoTrace> is_empty(const Buchi& a, const ExploreLimits& limits = {});

/// Membership of u.v^omega, decided by walking the stem to a state set and
/// searching an accepting cycle in the product with the loop positions.
bool lasso_member(AutomatonView& view, const LassoTrace& t);
bool lasso_member(const Buchi& a, const LassoTrace& t);

/// L(p) minus the union of the module languages, via iterated intersection
/// with lazy complements.
Buchi difference(const Buchi& p, const std::vector<Buchi>& ms, std::size_t state_budget = 1u << 20);
std::shared_ptr<AutomatonView> difference_view(std::shared_ptr<AutomatonView> p,
                                               const std::vector<std::shared_ptr<AutomatonView>>& complements);

std::string to_dot(const Buchi& b, const std::string& name,
                   const std::vector<std::string>* state_labels = nullptr);
std::string to_dot(const Program& p, const std::string& name);
std::string to_dot(const Module& m, const std::string& name);

}  // namespace termdec
