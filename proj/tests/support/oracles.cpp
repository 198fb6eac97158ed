#include "support/oracles.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace termdec::testing {

namespace {

struct TarjanState {
    std::vector<int> index, low;
    std::vector<bool> on_stack;
    std::vector<StateId> stack;
    int counter = 0;
};

}  // namespace

bool scc_nonempty(const Buchi& a) {
    std::size_t n = a.state_count();
    std::vector<std::vector<StateId>> succ(n);
    for (const auto& [s, st, d] : a.transitions())
        succ[s].push_back(d);

    std::vector<bool> reachable(n, false);
    std::vector<StateId> work(a.initial().begin(), a.initial().end());
    for (StateId s : work)
        reachable[s] = true;
    while (!work.empty()) {
        StateId s = work.back();
        work.pop_back();
        for (StateId d : succ[s])
            if (!reachable[d]) {
                reachable[d] = true;
                work.push_back(d);
            }
    }

    TarjanState t;
    t.index.assign(n, -1);
    t.low.assign(n, 0);
    t.on_stack.assign(n, false);
    bool found = false;

    std::function<void(StateId)> strongconnect = [&](StateId v) {
        t.index[v] = t.low[v] = t.counter++;
        t.stack.push_back(v);
        t.on_stack[v] = true;
        for (StateId w : succ[v]) {
            if (t.index[w] < 0) {
                strongconnect(w);
                t.low[v] = std::min(t.low[v], t.low[w]);
            } else if (t.on_stack[w]) {
                t.low[v] = std::min(t.low[v], t.index[w]);
            }
        }
        if (t.low[v] == t.index[v]) {
            std::vector<StateId> scc;
            while (true) {
                StateId w = t.stack.back();
                t.stack.pop_back();
                t.on_stack[w] = false;
                scc.push_back(w);
                if (w == v)
                    break;
            }
            bool has_cycle = scc.size() > 1;
            if (!has_cycle)
                for (StateId d : succ[scc[0]])
                    if (d == scc[0])
                        has_cycle = true;
            if (has_cycle)
                for (StateId w : scc)
                    if (a.accepting(w))
                        found = true;
        }
    };
    for (StateId s = 0; s < n; ++s)
        if (reachable[s] && t.index[s] < 0)
            strongconnect(s);
    return found;
}

bool unfold_member(const Buchi& a, const LassoTrace& t) {
    std::size_t n = a.state_count();
    // States reachable on the stem.
    std::vector<bool> frontier(n, false);
    for (StateId s : a.initial())
        frontier[s] = true;
    for (Statement st : t.stem) {
        std::vector<bool> next(n, false);
        for (StateId s = 0; s < n; ++s)
            if (frontier[s])
                for (StateId d : a.successors(s, st))
                    next[d] = true;
        frontier = std::move(next);
    }

    // One loop block: reach[s][d] in {0 = no, 1 = path, 2 = path visiting an
    // accepting state after leaving s}.
    std::vector<std::vector<int>> block(n, std::vector<int>(n, 0));
    for (StateId s = 0; s < n; ++s) {
        // (state, flag) pairs.
        std::vector<std::array<bool, 2>> cur(n, {false, false});
        cur[s][0] = true;
        for (Statement st : t.loop) {
            std::vector<std::array<bool, 2>> next(n, {false, false});
            for (StateId q = 0; q < n; ++q)
                for (int f = 0; f < 2; ++f)
                    if (cur[q][f])
                        for (StateId d : a.successors(q, st)) {
                            int nf = f || a.accepting(d);
                            next[d][nf] = true;
                        }
            cur = std::move(next);
        }
        for (StateId d = 0; d < n; ++d) {
            if (cur[d][1])
                block[s][d] = 2;
            else if (cur[d][0])
                block[s][d] = 1;
        }
    }

    // Boundary graph over (state, flag-accumulated): from a stem state, find
    // some s with a flagged block-cycle.
    std::vector<bool> boundary_reach(n, false);
    std::vector<StateId> work;
    for (StateId s = 0; s < n; ++s)
        if (frontier[s]) {
            boundary_reach[s] = true;
            work.push_back(s);
        }
    while (!work.empty()) {
        StateId s = work.back();
        work.pop_back();
        for (StateId d = 0; d < n; ++d)
            if (block[s][d] && !boundary_reach[d]) {
                boundary_reach[d] = true;
                work.push_back(d);
            }
    }
    for (StateId s = 0; s < n; ++s) {
        if (!boundary_reach[s])
            continue;
        // BFS over (state, flag) from (s, 0) searching (s, 1).
        std::vector<std::array<bool, 2>> seen(n, {false, false});
        std::vector<std::pair<StateId, int>> queue;
        auto push = [&](StateId q, int f) {
            if (!seen[q][f]) {
                seen[q][f] = true;
                queue.emplace_back(q, f);
            }
        };
        for (StateId d = 0; d < n; ++d)
            if (block[s][d])
                push(d, block[s][d] == 2 ? 1 : 0);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            auto [q, f] = queue[i];
            if (q == s && f == 1)
                return true;
            for (StateId d = 0; d < n; ++d)
                if (block[q][d])
                    push(d, (f || block[q][d] == 2) ? 1 : 0);
        }
    }
    return false;
}

bool programs_isomorphic(const Program& a, const Program& b) {
    if (a.location_count() != b.location_count() || a.edges().size() != b.edges().size())
        return false;
    std::size_t n = a.location_count();
    auto edge_set = [](const Program& p, const std::vector<int>& map) {
        std::vector<std::tuple<int, std::uint32_t, int>> out;
        for (const Edge& e : p.edges())
            out.emplace_back(map[e.src], e.stmt.id(), map[e.dst]);
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    auto target = edge_set(b, identity);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end());
    do {
        if (perm[a.initial()] != static_cast<int>(b.initial()))
            continue;
        if (edge_set(a, perm) == target)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Statement letter(int i) { return Statement::havoc(Variable(std::string(1, static_cast<char>('a' + i)))); }

Buchi random_buchi(std::mt19937& rng, const RandomAutomatonOptions& opt) {
    std::uniform_int_distribution<int> state_count(1, opt.max_states);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> density_dist(opt.density_min, opt.density_max);
    int n = state_count(rng);
    double density = density_dist(rng);
    std::vector<Statement> alpha;
    for (int i = 0; i < opt.alphabet_size; ++i)
        alpha.push_back(letter(i));
    std::vector<std::tuple<StateId, Statement, StateId>> trans;
    for (int s = 0; s < n; ++s)
        for (int l = 0; l < opt.alphabet_size; ++l)
            for (int d = 0; d < n; ++d)
                if (unit(rng) < density)
                    trans.emplace_back(s, alpha[l], d);
    std::vector<bool> accepting(n);
    bool any = false;
    for (int s = 0; s < n; ++s) {
        accepting[s] = unit(rng) < opt.accepting_prob;
        any = any || accepting[s];
    }
    if (!any)
        accepting[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, n - 1)(rng))] = true;
    std::vector<std::string> names;
    for (int s = 0; s < n; ++s)
        names.push_back("s" + std::to_string(s));
    return Buchi(std::move(names), alpha, {0}, std::move(accepting), std::move(trans));
}

std::vector<LassoTrace> all_lassos(const std::vector<Statement>& letters, int max_stem, int max_loop) {
    std::vector<std::vector<Statement>> words{{}};
    std::vector<LassoTrace> out;
    std::function<void(std::vector<Statement>&, int)> gen = [&](std::vector<Statement>& word, int limit) {
        if (static_cast<int>(word.size()) == limit)
            return;
        for (Statement l : letters) {
            word.push_back(l);
            words.push_back(word);
            gen(word, limit);
            word.pop_back();
        }
    };
    std::vector<Statement> scratch;
    gen(scratch, std::max(max_stem, max_loop));
    for (const auto& stem : words) {
        if (static_cast<int>(stem.size()) > max_stem)
            continue;
        for (const auto& loop : words) {
            if (loop.empty() || static_cast<int>(loop.size()) > max_loop)
                continue;
            out.push_back({stem, loop});
        }
    }
    return out;
}

Cube random_cube(std::mt19937& rng, const std::vector<Variable>& vars, int max_atoms, double eq_prob) {
    std::uniform_int_distribution<int> atom_count(1, max_atoms);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> cst(-6, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int k = atom_count(rng);
    std::vector<Atom> atoms;
    for (int i = 0; i < k; ++i) {
        LinearTerm t = LinearTerm::constant(cst(rng));
        for (const Variable& v : vars)
            t += LinearTerm(v, coeff(rng));
        atoms.push_back(unit(rng) < eq_prob ? Atom::eq_zero(t) : Atom::leq_zero(t));
    }
    return Cube(std::move(atoms));
}

std::vector<std::map<Variable, Integer>> integer_box(const std::vector<Variable>& vars, int radius) {
    std::vector<std::map<Variable, Integer>> out{{}};
    for (const Variable& v : vars) {
        std::vector<std::map<Variable, Integer>> next;
        for (const auto& base : out)
            for (int x = -radius; x <= radius; ++x) {
                auto m = base;
                m[v] = x;
                next.push_back(std::move(m));
            }
        out = std::move(next);
    }
    return out;
}

SimulationOutcome simulate_rank_decrease(const CertifiedModule& cm, std::mt19937& rng, int target_fair_runs,
                                         int max_steps, int value_radius, int max_attempts) {
    const Program& p = cm.module.program();
    std::vector<Variable> vars = p.variables();
    std::uniform_int_distribution<int> value(-value_radius, value_radius);
    std::vector<std::vector<Edge>> out(p.location_count());
    for (const Edge& e : p.edges())
        out[e.src].push_back(e);

    SimulationOutcome outcome;
    for (int attempt = 0; attempt < max_attempts && outcome.fair_runs < target_fair_runs; ++attempt) {
        std::map<Variable, Integer> nu;
        for (const Variable& v : vars)
            nu[v] = value(rng);
        Location loc = cm.module.initial();
        std::optional<Rational> previous_rank;
        int fin_visits = 0;
        for (int step = 0; step < max_steps; ++step) {
            const auto& edges = out[loc];
            if (edges.empty())
                break;
            const Edge& e =
                edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
            bool feasible = true;
            switch (e.stmt.kind()) {
            case StatementKind::Assume:
                for (const Atom& a : e.stmt.guard())
                    if (!a.holds([&nu](const Variable& v) { return Rational(nu[v]); }))
                        feasible = false;
                break;
            case StatementKind::Assign: {
                Rational r = e.stmt.rhs().evaluate([&nu](const Variable& v) { return Rational(nu[v]); });
                // Statement coefficients are integral, so the value is too.
                nu[e.stmt.lhs()] = numerator(r) / denominator(r);
                break;
            }
            case StatementKind::Havoc:
                nu[e.stmt.lhs()] = value(rng);
                break;
            }
            if (!feasible)
                break;
            loc = e.dst;
            if (loc == cm.module.final_location()) {
                Rational rank = cm.rank.evaluate(nu);
                if (previous_rank.has_value()) {
                    ++fin_visits;
                    bool decreases = rank < *previous_rank && *previous_rank >= 0;
                    if (!decreases)
                        ++outcome.decrease_violations;
                }
                previous_rank = rank;
            }
        }
        if (fin_visits >= 1)
            ++outcome.fair_runs;  // at least two final visits happened
    }
    return outcome;
}

int run_cli(const std::string& args, std::string* output) {
    std::string cmd = std::string(TERMDEC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return -1;
    std::string captured;
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe))
        captured.append(buffer, got);
    int status = pclose(pipe);
    if (output)
        *output = captured;
    return WEXITSTATUS(status);
}

std::string programs_dir() { return TERMDEC_TEST_PROGRAMS_DIR; }

std::string read_program_file(const std::string& name) {
    std::ifstream in(programs_dir() + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace termdec::testing
