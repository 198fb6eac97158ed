#include "termdec/automata.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace termdec {

namespace {

std::vector<Statement> sorted_alphabet(std::vector<Statement> letters) {
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    return letters;
}

void require_same_alphabet(const std::vector<Statement>& a, const std::vector<Statement>& b) {
    if (a != b)
        throw std::invalid_argument("alphabet mismatch");
}

std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

// ------------------------------------------------------------- LassoTrace --

LassoTrace LassoTrace::canonical() const {
    LassoTrace t = *this;
    // Reduce the loop to its primitive period.
    for (std::size_t p = 1; p <= t.loop.size() / 2; ++p) {
        if (t.loop.size() % p != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = p; i < t.loop.size() && periodic; ++i)
            periodic = t.loop[i] == t.loop[i - p];
        if (periodic) {
            t.loop.erase(t.loop.begin() + static_cast<std::ptrdiff_t>(p), t.loop.end());
            break;
        }
    }
    // Absorb stem letters that already agree with the loop tail.
    while (!t.stem.empty() && t.stem.back() == t.loop.back()) {
        t.stem.pop_back();
        std::rotate(t.loop.begin(), t.loop.end() - 1, t.loop.end());
    }
    return t;
}

std::string to_string(const LassoTrace& t) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < t.stem.size(); ++i)
        os << (i ? " ; " : "") << t.stem[i].text();
    os << "] ([";
    for (std::size_t i = 0; i < t.loop.size(); ++i)
        os << (i ? " ; " : "") << t.loop[i].text();
    os << "])^w";
    return os.str();
}

// ------------------------------------------------------------------ Buchi --

Buchi::Buchi(std::vector<std::string> state_names, std::vector<Statement> alphabet,
             std::vector<StateId> initial, std::vector<bool> accepting,
             std::vector<std::tuple<StateId, Statement, StateId>> transitions)
    : state_names_(std::move(state_names)),
      alphabet_(sorted_alphabet(std::move(alphabet))),
      initial_(std::move(initial)),
      accepting_(std::move(accepting)),
      transitions_(std::move(transitions)) {
    if (accepting_.size() != state_names_.size())
        throw std::invalid_argument("accepting vector size mismatch");
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    for (const auto& [s, st, d] : transitions_) {
        if (s >= state_names_.size() || d >= state_names_.size())
            throw std::invalid_argument("transition endpoint out of range");
        if (!std::binary_search(alphabet_.begin(), alphabet_.end(), st))
            throw std::invalid_argument("transition letter outside the declared alphabet");
        index_[{s, st.id()}].push_back(d);
    }
    for (auto& [k, v] : index_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

const std::vector<StateId>& Buchi::successors(StateId s, Statement st) const {
    auto it = index_.find({s, st.id()});
    return it == index_.end() ? empty_ : it->second;
}

// ------------------------------------------------------------------ views --

namespace {

class ExplicitView final : public AutomatonView {
  public:
    explicit ExplicitView(Buchi b) : b_(std::move(b)) {}

    const std::vector<Statement>& alphabet() const override { return b_.alphabet(); }
    const std::vector<StateId>& initial_states() override { return b_.initial(); }
    bool accepting(StateId s) override { return b_.accepting(s); }
    const std::vector<StateId>& successors(StateId s, Statement st) override { return b_.successors(s, st); }
    std::size_t state_count_bound() const override { return b_.state_count(); }

  private:
    Buchi b_;
};

class ProductView final : public AutomatonView {
  public:
    ProductView(std::shared_ptr<AutomatonView> a, std::shared_ptr<AutomatonView> b)
        : a_(std::move(a)), b_(std::move(b)) {
        require_same_alphabet(a_->alphabet(), b_->alphabet());
        for (StateId sa : a_->initial_states())
            for (StateId sb : b_->initial_states())
                initial_.push_back(intern(sa, sb, 1));
    }

    const std::vector<Statement>& alphabet() const override { return a_->alphabet(); }
    const std::vector<StateId>& initial_states() override { return initial_; }

    bool accepting(StateId s) override {
        const auto& [sa, sb, phase] = states_[s];
        return phase == 2 && b_->accepting(sb);
    }

    const std::vector<StateId>& successors(StateId s, Statement st) override {
        auto key = (static_cast<std::uint64_t>(s) << 32) | st.id();
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        auto [sa, sb, phase] = states_[s];
        int next_phase = phase == 1 ? (a_->accepting(sa) ? 2 : 1) : (b_->accepting(sb) ? 1 : 2);
        std::vector<StateId> out;
        for (StateId ta : a_->successors(sa, st))
            for (StateId tb : b_->successors(sb, st))
                out.push_back(intern(ta, tb, next_phase));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return memo_.emplace(key, std::move(out)).first->second;
    }

    std::size_t state_count_bound() const override {
        return 2 * a_->state_count_bound() * b_->state_count_bound();
    }

    bool subsumption_info(StateId s, std::vector<std::uint64_t>* key,
                          std::vector<std::int32_t>* ranks) override {
        const auto& [sa, sb, phase] = states_[s];
        key->push_back(static_cast<std::uint64_t>(phase) | 0xa000000000000000ull);
        if (!a_->subsumption_info(sa, key, ranks))
            key->push_back(0xb000000000000000ull | sa);
        key->push_back(0xc000000000000000ull);
        if (!b_->subsumption_info(sb, key, ranks))
            key->push_back(0xb000000000000000ull | sb);
        return true;
    }

  private:
    StateId intern(StateId sa, StateId sb, int phase) {
        auto [it, inserted] = ids_.emplace(std::make_tuple(sa, sb, phase), 0);
        if (inserted) {
            it->second = static_cast<StateId>(states_.size());
            states_.push_back({sa, sb, phase});
        }
        return it->second;
    }

    struct TupleHash {
        std::size_t operator()(const std::tuple<StateId, StateId, int>& t) const {
            return hash_combine(hash_combine(std::get<0>(t), std::get<1>(t)),
                                static_cast<std::size_t>(std::get<2>(t)));
        }
    };

    std::shared_ptr<AutomatonView> a_;
    std::shared_ptr<AutomatonView> b_;
    std::vector<std::tuple<StateId, StateId, int>> states_;
    std::unordered_map<std::tuple<StateId, StateId, int>, StateId, TupleHash> ids_;
    std::unordered_map<std::uint64_t, std::vector<StateId>> memo_;
    std::vector<StateId> initial_;
};

/// Rank-based complementation. A macro state assigns each tracked input
/// state a rank at most 2n, accepting input states carry even ranks, and the
/// obligation set holds even-ranked states that still have to fall to an odd
/// rank before the next release. Successor rankings are generated per parity
/// pattern, each taking the maximal rank consistent with its predecessors;
/// this keeps the language exact while bounding the branching at 2^|dom|.
/// Macro states are interned exactly: reusing a state with different rank
/// values would let ranks grow back along a run and admit words of the
/// input language.
class ComplementView final : public AutomatonView {
  public:
    ComplementView(std::shared_ptr<AutomatonView> input, std::size_t state_budget)
        : input_(std::move(input)), budget_(state_budget) {
        max_rank_ = 2 * static_cast<int>(input_->state_count_bound());
        Macro init;
        for (StateId q : input_->initial_states())
            init.ranks.emplace_back(q, max_rank_);
        std::sort(init.ranks.begin(), init.ranks.end());
        init.obligations = 0;
        initial_.push_back(intern(std::move(init)));
    }

    const std::vector<Statement>& alphabet() const override { return input_->alphabet(); }
    const std::vector<StateId>& initial_states() override { return initial_; }
    bool accepting(StateId s) override { return states_[s].obligations == 0; }

    const std::vector<StateId>& successors(StateId s, Statement st) override {
        auto key = (static_cast<std::uint64_t>(s) << 32) | st.id();
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        std::vector<StateId> out = compute_successors(states_[s], st);
        return memo_.emplace(key, std::move(out)).first->second;
    }

    bool subsumption_info(StateId s, std::vector<std::uint64_t>* key,
                          std::vector<std::int32_t>* ranks) override {
        const Macro& m = states_[s];
        key->push_back(m.obligations);
        for (const auto& [q, r] : m.ranks) {
            key->push_back((static_cast<std::uint64_t>(q) << 1) | static_cast<std::uint64_t>(r & 1));
            ranks->push_back(r);
        }
        return true;
    }

    std::size_t state_count_bound() const override {
        // Loose bound; only used if a complement is complemented again.
        std::size_t n = input_->state_count_bound();
        std::size_t per = static_cast<std::size_t>(max_rank_) + 2;
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) {
            total *= per * 2;
            if (total > (1u << 28))
                return 1u << 28;
        }
        return total;
    }

  private:
    struct Macro {
        std::vector<std::pair<StateId, int>> ranks;  // sorted by state
        std::uint64_t obligations;                   // bitmask over ranks positions

        bool operator==(const Macro&) const = default;
    };

    struct MacroHash {
        std::size_t operator()(const Macro& m) const {
            std::size_t h = std::hash<std::uint64_t>()(m.obligations);
            for (const auto& [q, r] : m.ranks)
                h = hash_combine(h, hash_combine(q, static_cast<std::size_t>(r)));
            return h;
        }
    };

    std::vector<StateId> compute_successors(Macro m, Statement st) {
        // Successor domain and rank bounds (minimum over predecessors).
        std::vector<StateId> dom;
        std::unordered_map<StateId, int> bound;
        std::unordered_map<StateId, bool> from_obligation;
        for (std::size_t i = 0; i < m.ranks.size(); ++i) {
            const auto& [q, r] = m.ranks[i];
            bool in_obl = (m.obligations >> i) & 1;
            for (StateId q2 : input_->successors(q, st)) {
                auto it = bound.find(q2);
                if (it == bound.end()) {
                    bound[q2] = r;
                    dom.push_back(q2);
                } else if (r < it->second) {
                    it->second = r;
                }
                if (in_obl)
                    from_obligation[q2] = true;
            }
        }
        std::sort(dom.begin(), dom.end());
        if (dom.size() > 62)
            throw StateBudgetError("complement domain too large");

        std::vector<bool> is_final(dom.size());
        std::vector<std::size_t> free_positions;
        for (std::size_t i = 0; i < dom.size(); ++i) {
            is_final[i] = input_->accepting(dom[i]);
            if (!is_final[i])
                free_positions.push_back(i);
        }
        if (free_positions.size() > 20)
            throw StateBudgetError("complement branching too large");

        bool release = m.obligations == 0;
        std::vector<StateId> out;
        std::uint64_t patterns = 1ULL << free_positions.size();
        for (std::uint64_t pat = 0; pat < patterns; ++pat) {
            Macro succ;
            succ.ranks.reserve(dom.size());
            bool feasible = true;
            for (std::size_t i = 0; i < dom.size() && feasible; ++i) {
                int b = bound[dom[i]];
                bool want_odd = false;
                if (!is_final[i]) {
                    std::size_t fi = std::lower_bound(free_positions.begin(), free_positions.end(), i) -
                                     free_positions.begin();
                    want_odd = (pat >> fi) & 1;
                }
                int val = (b % 2 == (want_odd ? 1 : 0)) ? b : b - 1;
                if (val < 0) {
                    feasible = false;
                    break;
                }
                succ.ranks.emplace_back(dom[i], val);
            }
            if (!feasible)
                continue;
            succ.obligations = 0;
            for (std::size_t i = 0; i < succ.ranks.size(); ++i) {
                bool even = succ.ranks[i].second % 2 == 0;
                if (!even)
                    continue;
                if (release || from_obligation.count(succ.ranks[i].first))
                    succ.obligations |= 1ULL << i;
            }
            out.push_back(intern(std::move(succ)));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    StateId intern(Macro m) {
        auto it = ids_.find(m);
        if (it != ids_.end())
            return it->second;
        if (states_.size() >= budget_)
            throw StateBudgetError("complement state budget exceeded");
        auto id = static_cast<StateId>(states_.size());
        states_.push_back(m);
        ids_.emplace(std::move(m), id);
        return id;
    }

    std::shared_ptr<AutomatonView> input_;
    std::size_t budget_;
    int max_rank_ = 0;
    std::vector<Macro> states_;
    std::unordered_map<Macro, StateId, MacroHash> ids_;
    std::unordered_map<std::uint64_t, std::vector<StateId>> memo_;
    std::vector<StateId> initial_;
};

}  // namespace

std::shared_ptr<AutomatonView> as_view(Buchi b) { return std::make_shared<ExplicitView>(std::move(b)); }

std::shared_ptr<AutomatonView> intersect_view(std::shared_ptr<AutomatonView> a,
                                              std::shared_ptr<AutomatonView> b) {
    return std::make_shared<ProductView>(std::move(a), std::move(b));
}

std::shared_ptr<AutomatonView> complement_view(std::shared_ptr<AutomatonView> a, std::size_t state_budget) {
    return std::make_shared<ComplementView>(std::move(a), state_budget);
}

// ------------------------------------------------------------ exploration --

namespace {

constexpr std::uint32_t kNoState = 0xffffffffu;

struct Explored {
    std::vector<StateId> order;            // discovery order (BFS)
    std::vector<std::uint32_t> dist;       // by state id, kNoState when unseen
    std::vector<StateId> parent_state;     // by state id
    std::vector<std::uint32_t> parent_letter_id;
};

Explored bfs_explore(AutomatonView& view, const std::vector<StateId>& roots, const ExploreLimits& limits) {
    Explored ex;
    auto ensure = [&ex](StateId s) {
        if (s >= ex.dist.size()) {
            ex.dist.resize(s + 1, kNoState);
            ex.parent_state.resize(s + 1, kNoState);
            ex.parent_letter_id.resize(s + 1, 0);
        }
    };
    std::deque<StateId> queue;
    for (StateId s : roots) {
        ensure(s);
        if (ex.dist[s] == kNoState) {
            ex.dist[s] = 0;
            ex.order.push_back(s);
            queue.push_back(s);
        }
    }
    std::size_t steps = 0;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (Statement st : view.alphabet()) {
            if (++steps % 1024 == 0)
                limits.check_deadline();
            for (StateId d : view.successors(s, st)) {
                ensure(d);
                if (ex.dist[d] == kNoState) {
                    ex.dist[d] = ex.dist[s] + 1;
                    ex.parent_state[d] = s;
                    ex.parent_letter_id[d] = st.id();
                    ex.order.push_back(d);
                    queue.push_back(d);
                    if (ex.order.size() > limits.max_states)
                        throw StateBudgetError("exploration state budget exceeded");
                }
            }
        }
    }
    return ex;
}

std::vector<std::uint32_t> ids_of(const std::vector<Statement>& sts) {
    std::vector<std::uint32_t> out;
    out.reserve(sts.size());
    for (Statement s : sts)
        out.push_back(s.id());
    return out;
}

}  // namespace

namespace {

/// Explored subgraph with successor edges resolved through subsumption
/// aliases: a freshly discovered state that is dominated (equal key,
/// pointwise smaller-or-equal ranks) by an already explored one is replaced
/// by that representative. Runs from the dominated state are matched by the
/// representative with identical acceptance, so the empty verdict is exact;
/// extracted lassos are re-verified by the caller.
struct PrunedGraph {
    struct EdgeTo {
        Statement stmt;
        StateId dst;
    };
    std::vector<StateId> order;                      // representative states, BFS order
    std::unordered_map<StateId, std::uint32_t> dense;  // representative -> dense index
    std::vector<std::vector<EdgeTo>> adj;            // by dense index
    std::vector<bool> accepting;
    std::vector<StateId> initial;                    // representatives
};

PrunedGraph explore_pruned(AutomatonView& view, bool prune, const ExploreLimits& limits) {
    PrunedGraph g;
    struct AntichainEntry {
        std::vector<std::int32_t> ranks;
        StateId repr;
    };
    std::map<std::vector<std::uint64_t>, std::vector<AntichainEntry>> antichain;
    std::unordered_map<StateId, StateId> alias;

    auto resolve = [&](StateId s) -> StateId {
        auto it = alias.find(s);
        if (it != alias.end())
            return it->second;
        std::vector<std::uint64_t> key;
        std::vector<std::int32_t> ranks;
        if (!prune || !view.subsumption_info(s, &key, &ranks)) {
            alias.emplace(s, s);
            return s;
        }
        auto& bucket = antichain[key];
        for (const AntichainEntry& e : bucket) {
            bool dominated = e.ranks.size() == ranks.size();
            for (std::size_t i = 0; i < ranks.size() && dominated; ++i)
                dominated = e.ranks[i] >= ranks[i];
            if (dominated) {
                alias.emplace(s, e.repr);
                return e.repr;
            }
        }
        bucket.push_back({std::move(ranks), s});
        alias.emplace(s, s);
        return s;
    };

    std::deque<StateId> queue;
    auto visit = [&](StateId s) -> std::uint32_t {
        auto it = g.dense.find(s);
        if (it != g.dense.end())
            return it->second;
        auto idx = static_cast<std::uint32_t>(g.order.size());
        g.dense.emplace(s, idx);
        g.order.push_back(s);
        g.adj.emplace_back();
        g.accepting.push_back(view.accepting(s));
        queue.push_back(s);
        if (g.order.size() > limits.max_states)
            throw StateBudgetError("exploration state budget exceeded");
        return idx;
    };

    for (StateId s : view.initial_states()) {
        StateId r = resolve(s);
        visit(r);
        g.initial.push_back(r);
    }
    std::sort(g.initial.begin(), g.initial.end());
    g.initial.erase(std::unique(g.initial.begin(), g.initial.end()), g.initial.end());

    std::size_t steps = 0;
    for (std::size_t qi = 0; qi < g.order.size(); ++qi) {
        StateId s = g.order[qi];
        std::uint32_t si = g.dense.at(s);
        for (Statement st : view.alphabet()) {
            if (++steps % 1024 == 0)
                limits.check_deadline();
            for (StateId d : view.successors(s, st)) {
                StateId r = resolve(d);
                visit(r);
                g.adj[si].push_back({st, r});
            }
        }
    }
    return g;
}

/// States of the pruned graph lying on a cycle.
std::vector<bool> pruned_cyclic(const PrunedGraph& g) {
    std::size_t n = g.order.size();
    constexpr std::uint32_t kUnseen = 0xffffffffu;
    std::vector<std::uint32_t> index(n, kUnseen), low(n, 0);
    std::vector<bool> on_stack(n, false), cyclic(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t counter = 0;
    struct Frame {
        std::uint32_t node;
        std::size_t next = 0;
    };
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnseen)
            continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < g.adj[f.node].size()) {
                std::uint32_t w = g.dense.at(g.adj[f.node][f.next++].dst);
                if (index[w] == kUnseen) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
            } else {
                std::uint32_t v = f.node;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().node] = std::min(low[frames.back().node], low[v]);
                if (low[v] == index[v]) {
                    std::vector<std::uint32_t> scc;
                    while (true) {
                        std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc.push_back(w);
                        if (w == v)
                            break;
                    }
                    bool has_cycle = scc.size() > 1;
                    if (!has_cycle)
                        for (const auto& e : g.adj[v])
                            if (g.dense.at(e.dst) == v)
                                has_cycle = true;
                    if (has_cycle)
                        for (std::uint32_t w : scc)
                            cyclic[w] = true;
                }
            }
        }
    }
    return cyclic;
}

struct BfsTree {
    std::vector<std::uint32_t> dist;
    std::vector<std::uint32_t> parent;
    std::vector<Statement> parent_stmt;
};

BfsTree pruned_bfs(const PrunedGraph& g, const std::vector<StateId>& roots) {
    constexpr std::uint32_t kInf = 0xffffffffu;
    BfsTree t;
    t.dist.assign(g.order.size(), kInf);
    t.parent.assign(g.order.size(), kInf);
    t.parent_stmt.reserve(g.order.size());
    std::vector<Statement> stmt_slot(g.order.size(), Statement::assume({}));
    std::deque<std::uint32_t> queue;
    for (StateId r : roots) {
        std::uint32_t i = g.dense.at(r);
        if (t.dist[i] == kInf) {
            t.dist[i] = 0;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        for (const auto& e : g.adj[s]) {
            std::uint32_t d = g.dense.at(e.dst);
            if (t.dist[d] == kInf) {
                t.dist[d] = t.dist[s] + 1;
                t.parent[d] = s;
                stmt_slot[d] = e.stmt;
                queue.push_back(d);
            }
        }
    }
    t.parent_stmt = std::move(stmt_slot);
    return t;
}

std::vector<Statement> pruned_path(const BfsTree& t, std::uint32_t target) {
    std::vector<Statement> path;
    std::uint32_t cur = target;
    while (t.parent[cur] != 0xffffffffu) {
        path.push_back(t.parent_stmt[cur]);
        cur = t.parent[cur];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

/// Shortest cycle through pivot in the pruned graph.
std::vector<Statement> pruned_cycle(const PrunedGraph& g, std::uint32_t pivot) {
    constexpr std::uint32_t kInf = 0xffffffffu;
    std::vector<std::uint32_t> dist(g.order.size(), kInf), parent(g.order.size(), kInf);
    std::vector<Statement> parent_stmt(g.order.size(), Statement::assume({}));
    std::deque<std::uint32_t> queue;
    for (const auto& e : g.adj[pivot]) {
        std::uint32_t d = g.dense.at(e.dst);
        if (d == pivot)
            return {e.stmt};
        if (dist[d] == kInf) {
            dist[d] = 1;
            parent[d] = pivot;
            parent_stmt[d] = e.stmt;
            queue.push_back(d);
        }
    }
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        for (const auto& e : g.adj[s]) {
            std::uint32_t d = g.dense.at(e.dst);
            if (d == pivot) {
                std::vector<Statement> cycle{e.stmt};
                std::uint32_t cur = s;
                while (cur != pivot) {
                    cycle.push_back(parent_stmt[cur]);
                    cur = parent[cur];
                }
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (dist[d] == kInf) {
                dist[d] = dist[s] + 1;
                parent[d] = s;
                parent_stmt[d] = e.stmt;
                queue.push_back(d);
            }
        }
    }
    return {};
}

std::optional<LassoTrace> search_lasso(AutomatonView& view, bool prune, const ExploreLimits& limits) {
    PrunedGraph g = explore_pruned(view, prune, limits);
    std::vector<bool> cyclic = pruned_cyclic(g);
    BfsTree tree = pruned_bfs(g, g.initial);
    std::optional<LassoTrace> best;
    auto better = [](const LassoTrace& a, const LassoTrace& b) {
        auto ka = std::make_tuple(a.stem.size(), ids_of(a.stem), a.loop.size(), ids_of(a.loop));
        auto kb = std::make_tuple(b.stem.size(), ids_of(b.stem), b.loop.size(), ids_of(b.loop));
        return ka < kb;
    };
    for (std::uint32_t i = 0; i < g.order.size(); ++i) {
        if (!g.accepting[i] || !cyclic[i] || tree.dist[i] == 0xffffffffu)
            continue;
        std::vector<Statement> cycle = pruned_cycle(g, i);
        if (cycle.empty())
            continue;
        LassoTrace t{pruned_path(tree, i), std::move(cycle)};
        if (!best || better(t, *best))
            best = std::move(t);
    }
    return best;
}

}  // namespace

std::optional<LassoTrace> is_empty(AutomatonView& view, const ExploreLimits& limits) {
    std::optional<LassoTrace> candidate = search_lasso(view, /*prune=*/true, limits);
    if (!candidate.has_value())
        return std::nullopt;
    // Pruning preserves the empty verdict exactly, but a lasso assembled
    // from pruned edges can in rare cases be spurious; verify and fall back
    // to the exact search if so.
    if (lasso_member(view, *candidate))
        return candidate;
    return search_lasso(view, /*prune=*/false, limits);
}

std::optional<LassoTrace> is_empty(const Buchi& a, const ExploreLimits& limits) {
    ExplicitView v(a);
    return is_empty(v, limits);
}

bool lasso_member(AutomatonView& view, const LassoTrace& t) {
    if (t.loop.empty())
        throw std::invalid_argument("lasso loop must be non-empty");
    // Walk the stem as a state set.
    std::vector<StateId> frontier = view.initial_states();
    for (Statement st : t.stem) {
        std::vector<StateId> next;
        for (StateId s : frontier)
            for (StateId d : view.successors(s, st))
                next.push_back(d);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier = std::move(next);
        if (frontier.empty())
            return false;
    }
    // Accepting cycle search in the product with the loop positions.
    // Node encoding: state * |loop| + position; state ids are dense per
    // view, so plain arrays suffice. Iterative Tarjan, stopping at the
    // first cyclic SCC that touches an accepting state.
    const std::size_t period = t.loop.size();
    auto node_of = [period](StateId s, std::size_t pos) {
        return static_cast<std::size_t>(s) * period + pos;
    };
    constexpr std::uint32_t kUnseen = 0xffffffffu;
    std::vector<std::uint32_t> index, low;
    std::vector<bool> on_stack;
    auto ensure = [&](std::size_t node) {
        if (node >= index.size()) {
            index.resize(node + 1, kUnseen);
            low.resize(node + 1, 0);
            on_stack.resize(node + 1, false);
        }
    };
    std::vector<std::size_t> stack;
    std::uint32_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next = 0;
    };
    auto succ_of = [&](std::size_t node) -> const std::vector<StateId>& {
        auto s = static_cast<StateId>(node / period);
        std::size_t pos = node % period;
        return view.successors(s, t.loop[pos]);
    };

    for (StateId root_state : frontier) {
        std::size_t root = node_of(root_state, 0);
        ensure(root);
        if (index[root] != kUnseen)
            continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            std::size_t pos = f.node % period;
            const std::vector<StateId>& succs = succ_of(f.node);
            if (f.next < succs.size()) {
                std::size_t w = node_of(succs[f.next++], (pos + 1) % period);
                ensure(w);
                if (index[w] == kUnseen) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
            } else {
                std::size_t v = f.node;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().node] = std::min(low[frames.back().node], low[v]);
                if (low[v] == index[v]) {
                    bool accepting_in_scc = false;
                    std::size_t scc_size = 0;
                    std::size_t first = stack.size();
                    while (true) {
                        std::size_t w = stack[--first];
                        ++scc_size;
                        if (view.accepting(static_cast<StateId>(w / period)))
                            accepting_in_scc = true;
                        if (w == v)
                            break;
                    }
                    bool cyclic = scc_size > 1;
                    if (!cyclic) {
                        for (StateId d : succ_of(v))
                            if (node_of(d, (v % period + 1) % period) == v)
                                cyclic = true;
                    }
                    if (cyclic && accepting_in_scc)
                        return true;
                    while (stack.size() > first) {
                        on_stack[stack.back()] = false;
                        stack.pop_back();
                    }
                }
            }
        }
    }
    return false;
}

bool lasso_member(const Buchi& a, const LassoTrace& t) {
    ExplicitView v(a);
    return lasso_member(v, t);
}

// ------------------------------------------------------------ constructors --

Buchi program_to_buchi(const Program& p) {
    std::vector<std::tuple<StateId, Statement, StateId>> trans;
    for (const Edge& e : p.edges())
        trans.emplace_back(e.src, e.stmt, e.dst);
    return Buchi(p.location_names(), p.alphabet(), {p.initial()},
                 std::vector<bool>(p.location_count(), true), std::move(trans));
}

Buchi module_to_buchi(const Module& m) {
    const Program& p = m.program();
    std::vector<std::tuple<StateId, Statement, StateId>> trans;
    for (const Edge& e : p.edges())
        trans.emplace_back(e.src, e.stmt, e.dst);
    std::vector<bool> accepting(p.location_count(), false);
    accepting[m.final_location()] = true;
    return Buchi(p.location_names(), p.alphabet(), {p.initial()}, std::move(accepting), std::move(trans));
}

Buchi materialize(AutomatonView& view, const ExploreLimits& limits) {
    Explored ex = bfs_explore(view, view.initial_states(), limits);
    std::unordered_map<StateId, StateId> renumber;
    std::vector<std::string> names;
    std::vector<bool> accepting;
    for (StateId s : ex.order) {
        renumber[s] = static_cast<StateId>(names.size());
        names.push_back("q" + std::to_string(names.size()));
        accepting.push_back(view.accepting(s));
    }
    std::vector<std::tuple<StateId, Statement, StateId>> trans;
    for (StateId s : ex.order)
        for (Statement st : view.alphabet())
            for (StateId d : view.successors(s, st))
                trans.emplace_back(renumber[s], st, renumber[d]);
    std::vector<StateId> initial;
    for (StateId s : view.initial_states())
        initial.push_back(renumber[s]);
    return Buchi(std::move(names), view.alphabet(), std::move(initial), std::move(accepting),
                 std::move(trans));
}

Buchi intersect(const Buchi& a, const Buchi& b) {
    auto v = intersect_view(as_view(a), as_view(b));
    return materialize(*v);
}

Buchi complement(const Buchi& a, std::size_t state_budget) {
    auto v = complement_view(as_view(a), state_budget);
    ExploreLimits limits;
    limits.max_states = state_budget;
    return materialize(*v, limits);
}

Buchi difference(const Buchi& p, const std::vector<Buchi>& ms, std::size_t state_budget) {
    auto acc = as_view(p);
    for (const Buchi& m : ms)
        acc = intersect_view(acc, complement_view(as_view(m), state_budget));
    ExploreLimits limits;
    limits.max_states = state_budget;
    return materialize(*acc, limits);
}

std::shared_ptr<AutomatonView> difference_view(std::shared_ptr<AutomatonView> p,
                                               const std::vector<std::shared_ptr<AutomatonView>>& complements) {
    auto acc = std::move(p);
    for (const auto& c : complements)
        acc = intersect_view(acc, c);
    return acc;
}

// -------------------------------------------------------------------- DOT --

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string to_dot(const Buchi& b, const std::string& name, const std::vector<std::string>* state_labels) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (StateId s = 0; s < b.state_count(); ++s) {
        os << "  n" << s << " [label=\""
           << dot_escape(state_labels ? (*state_labels)[s] : b.state_names()[s]) << "\"";
        if (b.accepting(s))
            os << ", shape=doublecircle";
        os << "];\n";
    }
    for (StateId s : b.initial()) {
        os << "  init" << s << " [shape=point, label=\"\"];\n";
        os << "  init" << s << " -> n" << s << ";\n";
    }
    for (const auto& [src, st, dst] : b.transitions())
        os << "  n" << src << " -> n" << dst << " [label=\"" << dot_escape(st.text()) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string to_dot(const Program& p, const std::string& name) {
    return to_dot(program_to_buchi(p), name);
}

std::string to_dot(const Module& m, const std::string& name) {
    return to_dot(module_to_buchi(m), name);
}

}  // namespace termdec
