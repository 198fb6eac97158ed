#pragma once

#include "termdec/statement.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace termdec {

using Location = std::uint32_t;

struct Edge {
    Location src;
    Statement stmt;
    Location dst;

    bool operator==(const Edge&) const = default;
};

/// A control-flow graph with statement-labeled edges.
class Program {
  public:
    Program() = default;
    Program(std::vector<std::string> location_names, Location initial, std::vector<Edge> edges);

    std::size_t location_count() const { return location_names_.size(); }
    const std::vector<std::string>& location_names() const { return location_names_; }
    const std::string& location_name(Location l) const { return location_names_[l]; }
    Location initial() const { return initial_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::vector<Edge> out_edges(Location l) const;

    /// Edge labels, sorted by statement id, deduplicated.
    std::vector<Statement> alphabet() const;

    /// All variables mentioned by any statement, sorted by name.
    std::vector<Variable> variables() const;

    bool operator==(const Program&) const = default;

  private:
    std::vector<std::string> location_names_;
    Location initial_ = 0;
    std::vector<Edge> edges_;
};

/// A program with a fairness constraint: fair traces visit `final` infinitely
/// often. Construction verifies the two-zone shape: the initial location must
/// not be reachable from the final one (the degenerate case initial == final
/// is allowed and has an empty pre-zone).
class Module {
  public:
    Module(Program program, Location final_location);

    const Program& program() const { return program_; }
    Location initial() const { return program_.initial(); }
    Location final_location() const { return final_; }

  private:
    Program program_;
    Location final_;
};

}  // namespace termdec
