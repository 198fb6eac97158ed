#pragma once

#include "termdec/automata.hpp"
#include "termdec/certifier.hpp"
#include "termdec/logic.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace termdec::testing {

/// Independent SCC-based emptiness: the language is non-empty iff some
/// reachable accepting state lies on a cycle.
bool scc_nonempty(const Buchi& a);

/// Independent lasso membership via the loop-block boundary graph: after the
/// stem, some boundary state must reach itself through at least one block
/// that visits an accepting state.
bool unfold_member(const Buchi& a, const LassoTrace& t);

/// Graph isomorphism (initial-preserving, statement-preserving) for small
/// programs, by backtracking over location bijections.
bool programs_isomorphic(const Program& a, const Program& b);

/// Letters a, b, c, ... as interned havoc statements, for automata tests
/// where only letter identity matters.
Statement letter(int i);

struct RandomAutomatonOptions {
    int max_states = 5;
    int alphabet_size = 3;
    double density_min = 0.3;
    double density_max = 0.8;
    double accepting_prob = 0.5;
};

Buchi random_buchi(std::mt19937& rng, const RandomAutomatonOptions& opt);

/// All lassos with |stem| <= max_stem and 1 <= |loop| <= max_loop over the
/// given letters.
std::vector<LassoTrace> all_lassos(const std::vector<Statement>& letters, int max_stem, int max_loop);

/// Random conjunctions over the given variables with small integer
/// coefficients.
Cube random_cube(std::mt19937& rng, const std::vector<Variable>& vars, int max_atoms,
                 double eq_prob = 0.2);

/// Every integer point of [-radius, radius]^vars.
std::vector<std::map<Variable, Integer>> integer_box(const std::vector<Variable>& vars, int radius);

struct SimulationOutcome {
    int fair_runs = 0;        // runs with at least two visits of the final location
    int decrease_violations = 0;
};

/// Random concrete executions of a certified module's underlying graph; at
/// every visit of the final location the ranking value must strictly drop
/// below the previous one, which must be nonnegative.
SimulationOutcome simulate_rank_decrease(const CertifiedModule& cm, std::mt19937& rng, int target_fair_runs,
                                         int max_steps, int value_radius, int max_attempts);

/// Runs the CLI binary; returns the exit code and captures stdout+stderr.
int run_cli(const std::string& args, std::string* output = nullptr);

std::string programs_dir();
std::string read_program_file(const std::string& name);

}  // namespace termdec::testing
