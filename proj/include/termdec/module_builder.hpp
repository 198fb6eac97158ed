#pragma once

#include "termdec/automata.hpp"
#include "termdec/certifier.hpp"

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

namespace termdec {

/// The generalization of a certified lasso module: states are the distinct
/// certificate predicates (locations with equal predicates merged), the
/// seed transitions are the lasso module's own edges, and further
/// transitions are admitted on demand whenever the corresponding Hoare
/// triple is valid. Edges leaving the final state compose the oldrnk update,
/// exactly as the certificate conditions require; queries are memoized.
class ExtendedModule {
  public:
    /// restrict_targets keeps the automaton deterministic enough to
    /// complement cheaply: besides the seed edges, only transitions into the
    /// initial or final state are admitted (rule 2 is a may-rule, so any
    /// admission policy yields a certified module; a narrower language can
    /// only cost extra refinement iterations).
    ExtendedModule(const CertifiedModule& cm, std::vector<Statement> program_alphabet,
                   bool restrict_targets = false);

    std::size_t state_count() const { return predicates_.size(); }
    const std::vector<Predicate>& state_predicates() const { return predicates_; }
    StateId initial_state() const { return initial_; }
    StateId final_state() const { return final_; }
    const std::vector<Statement>& alphabet() const { return alphabet_; }
    const RankingFunction& rank() const { return rank_; }
    const std::vector<std::tuple<StateId, Statement, StateId>>& seed_transitions() const { return seeds_; }

    /// Rule-2 oracle. Transitions admitted only with a non-vacuous Hoare
    /// triple (an empty postcondition would certify anything and could break
    /// the module shape); entailment budget overruns count as "no
    /// transition".
    bool has_transition(StateId src, Statement st, StateId dst);

    /// Memoized successor oracle behind has_transition.
    const std::vector<StateId>& successor_states(StateId src, Statement st);

    /// Full sweep over the alphabet; the result is the automaton the lazy
    /// view denotes.
    Buchi materialize();

    /// The materialized module re-packaged with its certificate, for
    /// reporting and re-validation.
    CertifiedModule to_certified_module();

    /// Number of Hoare queries answered so far (statistics).
    std::size_t query_count() const { return query_count_; }

  private:
    std::vector<Predicate> predicates_;
    StateId initial_ = 0;
    StateId final_ = 0;
    std::vector<Statement> alphabet_;
    RankingFunction rank_;
    std::vector<std::tuple<StateId, Statement, StateId>> seeds_;
    std::map<std::pair<StateId, std::uint32_t>, std::vector<StateId>> seed_index_;
    std::unordered_map<std::uint64_t, std::vector<StateId>> memo_;
    std::unordered_map<std::uint64_t, bool> post_nonempty_;
    std::size_t query_count_ = 0;
    bool restrict_targets_ = false;
};

/// Modification rule 1: quotient of the lasso module by predicate equality
/// (syntactic normal form first, mutual entailment second). The initial
/// location is never merged with the final one.
std::shared_ptr<ExtendedModule> merge_locations(const CertifiedModule& cm,
                                                std::vector<Statement> program_alphabet,
                                                bool restrict_targets = false);

/// Lazy automaton over the predicate states, suitable for intersection,
/// complementation and emptiness.
std::shared_ptr<AutomatonView> as_buchi(std::shared_ptr<ExtendedModule> em);

}  // namespace termdec
