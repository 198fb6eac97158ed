#pragma once

#include "termdec/linear.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace termdec {

enum class StatementKind {
    Assume,  // conjunction of atoms
    Assign,  // lhs := rhs
    Havoc,   // lhs gets an arbitrary value
};

/// A program statement, interned so that structurally equal statements are
/// the same alphabet letter. Two statements are equal iff their ids are
/// equal, and the printed text is injective on ids.
class Statement {
  public:
    static Statement assume(std::vector<Atom> guard);
    static Statement assign(Variable lhs, LinearTerm rhs);
    static Statement havoc(Variable v);

    std::uint32_t id() const { return id_; }
    StatementKind kind() const;
    /// Guard atoms (Assume only).
    std::span<const Atom> guard() const;
    const Variable& lhs() const;
    const LinearTerm& rhs() const;
    const std::string& text() const;

    /// Variables read or written by this statement.
    std::vector<Variable> variables() const;

    bool operator==(const Statement& o) const { return id_ == o.id_; }
    auto operator<=>(const Statement& o) const { return id_ <=> o.id_; }

  private:
    explicit Statement(std::uint32_t id) : id_(id) {}

    std::uint32_t id_;
};

}  // namespace termdec

template <>
struct std::hash<termdec::Statement> {
    std::size_t operator()(const termdec::Statement& s) const { return std::hash<std::uint32_t>()(s.id()); }
};
