#include "termdec/module_builder.hpp"

#include <algorithm>
#include <iostream>

namespace termdec {

ExtendedModule::ExtendedModule(const CertifiedModule& cm, std::vector<Statement> program_alphabet,
                               bool restrict_targets)
    : alphabet_(std::move(program_alphabet)), rank_(cm.rank), restrict_targets_(restrict_targets) {
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    // Alphabet must cover the module's own statements.
    for (Statement st : cm.module.program().alphabet())
        if (!std::binary_search(alphabet_.begin(), alphabet_.end(), st))
            throw std::invalid_argument("module statement outside the program alphabet");

    const Program& p = cm.module.program();
    Location init = cm.module.initial();
    Location fin = cm.module.final_location();

    // Rule 1: group locations by predicate. Normal forms are canonical, so
    // syntactic equality is the common case; mutual entailment catches the
    // rest. The initial location is kept apart from the final one.
    std::vector<StateId> state_of(p.location_count());
    std::vector<Location> representative;
    for (Location l = 0; l < p.location_count(); ++l) {
        const Predicate& pred = cm.cert.at.at(l);
        StateId found = static_cast<StateId>(representative.size());
        for (StateId s = 0; s < representative.size(); ++s) {
            bool init_fin_clash = (l == fin && representative[s] == init) ||
                                  (l == init && representative[s] == fin);
            if (init_fin_clash)
                continue;
            const Predicate& other = predicates_[s];
            if (pred == other || (entails(pred, other) && entails(other, pred))) {
                found = s;
                break;
            }
        }
        if (found == representative.size()) {
            representative.push_back(l);
            predicates_.push_back(pred);
        }
        state_of[l] = found;
    }
    initial_ = state_of[init];
    final_ = state_of[fin];

    for (const Edge& e : p.edges())
        seeds_.emplace_back(state_of[e.src], e.stmt, state_of[e.dst]);
    std::sort(seeds_.begin(), seeds_.end());
    seeds_.erase(std::unique(seeds_.begin(), seeds_.end()), seeds_.end());
    for (const auto& [s, st, d] : seeds_)
        seed_index_[{s, st.id()}].push_back(d);
}

const std::vector<StateId>& ExtendedModule::successor_states(StateId src, Statement st) {
    auto key = (static_cast<std::uint64_t>(src) << 32) | st.id();
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;

    std::vector<StateId> out;
    auto seed_it = seed_index_.find({src, st.id()});
    if (seed_it != seed_index_.end())
        out = seed_it->second;

    // Vacuous triples (empty postcondition) are declined: they would admit
    // arbitrary targets, including edges back into the pre-zone.
    bool post_ok;
    auto post_it = post_nonempty_.find(key);
    if (post_it != post_nonempty_.end()) {
        post_ok = post_it->second;
    } else {
        Predicate post = src == final_
                             ? strongest_post(strongest_post_rank_update(predicates_[src], rank_.as_term()),
                                              st)
                             : strongest_post(predicates_[src], st);
        post_ok = !post.is_false();
        post_nonempty_.emplace(key, post_ok);
    }
    if (post_ok) {
        for (StateId dst = 0; dst < predicates_.size(); ++dst) {
            if (restrict_targets_ && dst != initial_ && dst != final_)
                continue;
            if (std::find(out.begin(), out.end(), dst) != out.end())
                continue;
            ++query_count_;
            bool valid = false;
            try {
                valid = src == final_
                            ? hoare_valid_with_rank_update(predicates_[src], rank_.as_term(), st,
                                                           predicates_[dst])
                            : hoare_valid(predicates_[src], st, predicates_[dst]);
            } catch (const EntailmentBudgetError& e) {
                std::cerr << "warning: transition query hit the entailment budget, treating as absent: "
                          << e.what() << "\n";
                valid = false;
            }
            if (valid)
                out.push_back(dst);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return memo_.emplace(key, std::move(out)).first->second;
}

bool ExtendedModule::has_transition(StateId src, Statement st, StateId dst) {
    if (!std::binary_search(alphabet_.begin(), alphabet_.end(), st))
        throw std::invalid_argument("statement outside the module alphabet");
    const std::vector<StateId>& t = successor_states(src, st);
    return std::binary_search(t.begin(), t.end(), dst);
}

namespace {

class ExtendedModuleViewImpl final : public AutomatonView {
  public:
    explicit ExtendedModuleViewImpl(std::shared_ptr<ExtendedModule> em)
        : em_(std::move(em)), initial_{em_->initial_state()} {}

    const std::vector<Statement>& alphabet() const override { return em_->alphabet(); }
    const std::vector<StateId>& initial_states() override { return initial_; }
    bool accepting(StateId s) override { return s == em_->final_state(); }
    const std::vector<StateId>& successors(StateId s, Statement st) override {
        return em_->successor_states(s, st);
    }
    std::size_t state_count_bound() const override { return em_->state_count(); }

  private:
    std::shared_ptr<ExtendedModule> em_;
    std::vector<StateId> initial_;
};

}  // namespace

std::shared_ptr<AutomatonView> as_buchi(std::shared_ptr<ExtendedModule> em) {
    return std::make_shared<ExtendedModuleViewImpl>(std::move(em));
}

Buchi ExtendedModule::materialize() {
    std::vector<std::string> names;
    for (StateId s = 0; s < predicates_.size(); ++s)
        names.push_back("m" + std::to_string(s));
    std::vector<bool> accepting(predicates_.size(), false);
    accepting[final_] = true;
    std::vector<std::tuple<StateId, Statement, StateId>> trans;
    for (StateId s = 0; s < predicates_.size(); ++s)
        for (Statement st : alphabet_)
            for (StateId d : successor_states(s, st))
                trans.emplace_back(s, st, d);
    return Buchi(std::move(names), alphabet_, {initial_}, std::move(accepting), std::move(trans));
}

CertifiedModule ExtendedModule::to_certified_module() {
    Buchi b = materialize();
    std::vector<Edge> edges;
    for (const auto& [s, st, d] : b.transitions())
        edges.push_back({s, st, d});
    Program prog(b.state_names(), initial_, std::move(edges));
    Module mod(std::move(prog), final_);
    RankCertificate cert;
    for (StateId s = 0; s < predicates_.size(); ++s)
        cert.at[s] = predicates_[s];
    return CertifiedModule{std::move(mod), rank_, std::move(cert)};
}

std::shared_ptr<ExtendedModule> merge_locations(const CertifiedModule& cm,
                                                std::vector<Statement> program_alphabet,
                                                bool restrict_targets) {
    return std::make_shared<ExtendedModule>(cm, std::move(program_alphabet), restrict_targets);
}

}  // namespace termdec
