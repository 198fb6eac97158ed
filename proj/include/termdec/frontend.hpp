#pragma once

#include "termdec/errors.hpp"
#include "termdec/program.hpp"

#include <string>
#include <string_view>

namespace termdec {

/// Parses the while-language (.wprog). Loops and branches are lowered to
/// guarded edges; `!=` and `||` in conditions split into parallel edges;
/// strict comparisons are tightened to `<=` over the integers. Locations
/// from which no further statement is possible are pruned, which keeps the
/// set of infinite traces unchanged.
Program parse_while_program(std::string_view source);

/// Parses the explicit .cfg edge-list format. No pruning is applied: the
/// result has exactly the listed locations and edges.
Program parse_cfg(std::string_view source);

/// Renders a program in the .cfg format. parse_cfg(render_cfg(p)) is
/// isomorphic to p provided every location of p is the initial location or
/// an edge endpoint (isolated other locations are not representable).
std::string render_cfg(const Program& p);

/// Parses one statement in the .cfg statement syntax (used when reloading
/// serialized modules).
Statement parse_statement_text(std::string_view text);

/// Parses "a <= b && c == d" style conjunctions; oldrnk is permitted here,
/// strict comparisons are tightened, != is rejected.
std::vector<Atom> parse_constraint_atoms(std::string_view text);

}  // namespace termdec
