#pragma once

#include "termdec/linear.hpp"

#include <map>
#include <optional>
#include <vector>

namespace termdec {

/// Exact rational feasibility via phase-1 simplex with Bland's rule.
/// Returns a satisfying point for the conjunction of atoms, or nullopt.
/// Variables absent from the returned map are zero.
std::optional<std::map<Variable, Rational>> lp_feasible(const std::vector<Atom>& constraints);

}  // namespace termdec
