#pragma once

#include "termdec/rational.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace termdec {

/// A program variable, identified by name. The name `oldrnk` is reserved for
/// the auxiliary rank-tracking variable and is rejected by the frontend.
class Variable {
  public:
    Variable() = default;
    explicit Variable(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }

    auto operator<=>(const Variable&) const = default;

  private:
    std::string name_;
};

extern const Variable kOldRnk;

/// An affine expression sum(c_v * v) + c over exact rationals.
/// Zero coefficients are never stored.
class LinearTerm {
  public:
    LinearTerm() = default;
    explicit LinearTerm(Rational constant) : constant_(std::move(constant)) {}
    explicit LinearTerm(const Variable& v) { coeffs_[v] = 1; }
    LinearTerm(const Variable& v, Rational coeff) {
        if (coeff != 0)
            coeffs_[v] = std::move(coeff);
    }

    static LinearTerm constant(Rational c) { return LinearTerm(std::move(c)); }

    const std::map<Variable, Rational>& coefficients() const { return coeffs_; }
    const Rational& constant_part() const { return constant_; }
    Rational coefficient(const Variable& v) const {
        auto it = coeffs_.find(v);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    bool is_constant() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
    bool mentions(const Variable& v) const { return coeffs_.count(v) != 0; }

    std::vector<Variable> variables() const {
        std::vector<Variable> out;
        out.reserve(coeffs_.size());
        for (const auto& [v, c] : coeffs_)
            out.push_back(v);
        return out;
    }

    LinearTerm& operator+=(const LinearTerm& o) {
        for (const auto& [v, c] : o.coeffs_)
            set_coefficient(v, coefficient(v) + c);
        constant_ += o.constant_;
        return *this;
    }
    LinearTerm& operator-=(const LinearTerm& o) {
        for (const auto& [v, c] : o.coeffs_)
            set_coefficient(v, coefficient(v) - c);
        constant_ -= o.constant_;
        return *this;
    }
    LinearTerm& operator*=(const Rational& k) {
        if (k == 0) {
            coeffs_.clear();
            constant_ = 0;
            return *this;
        }
        for (auto& [v, c] : coeffs_)
            c *= k;
        constant_ *= k;
        return *this;
    }

    friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
    friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
    friend LinearTerm operator*(LinearTerm a, const Rational& k) { return a *= k; }
    friend LinearTerm operator*(const Rational& k, LinearTerm a) { return a *= k; }
    friend LinearTerm operator-(LinearTerm a) { return a *= Rational(-1); }

    void set_coefficient(const Variable& v, Rational c) {
        if (c == 0)
            coeffs_.erase(v);
        else
            coeffs_[v] = std::move(c);
    }

    /// Replaces v by the given term.
    LinearTerm substitute(const Variable& v, const LinearTerm& replacement) const {
        Rational c = coefficient(v);
        if (c == 0)
            return *this;
        LinearTerm out = *this;
        out.set_coefficient(v, 0);
        out += replacement * c;
        return out;
    }

    /// Renames v to w (w must be fresh or absent from the term).
    LinearTerm rename(const Variable& v, const Variable& w) const { return substitute(v, LinearTerm(w)); }

    template <typename Lookup>
    Rational evaluate(Lookup&& value_of) const {
        Rational acc = constant_;
        for (const auto& [v, c] : coeffs_)
            acc += c * value_of(v);
        return acc;
    }

    bool operator==(const LinearTerm& o) const {
        return constant_ == o.constant_ && coeffs_ == o.coeffs_;
    }

    /// Total order (lexicographic over the coefficient map, then constant);
    /// used for canonical sorting only.
    int compare(const LinearTerm& o) const {
        auto it = coeffs_.begin();
        auto jt = o.coeffs_.begin();
        for (; it != coeffs_.end() && jt != o.coeffs_.end(); ++it, ++jt) {
            if (it->first != jt->first)
                return it->first < jt->first ? -1 : 1;
            if (it->second != jt->second)
                return it->second < jt->second ? -1 : 1;
        }
        if (it != coeffs_.end())
            return 1;
        if (jt != o.coeffs_.end())
            return -1;
        if (constant_ != o.constant_)
            return constant_ < o.constant_ ? -1 : 1;
        return 0;
    }

    bool operator<(const LinearTerm& o) const { return compare(o) < 0; }

  private:
    std::map<Variable, Rational> coeffs_;
    Rational constant_ = 0;
};

enum class Rel {
    LeqZero,  // term <= 0
    EqZero,   // term = 0
};

/// A normalized linear constraint `term rel 0`. Normalization scales the term
/// to coprime integer coefficients; equalities additionally get a positive
/// leading coefficient so that syntactically equal atoms compare equal.
class Atom {
  public:
    Atom(LinearTerm term, Rel rel) : term_(std::move(term)), rel_(rel) { normalize(); }

    static Atom leq_zero(LinearTerm t) { return Atom(std::move(t), Rel::LeqZero); }
    static Atom eq_zero(LinearTerm t) { return Atom(std::move(t), Rel::EqZero); }

    const LinearTerm& term() const { return term_; }
    Rel rel() const { return rel_; }

    bool is_trivially_true() const {
        if (!term_.is_constant())
            return false;
        return rel_ == Rel::EqZero ? term_.constant_part() == 0 : term_.constant_part() <= 0;
    }
    bool is_trivially_false() const {
        if (!term_.is_constant())
            return false;
        return rel_ == Rel::EqZero ? term_.constant_part() != 0 : term_.constant_part() > 0;
    }
    bool mentions(const Variable& v) const { return term_.mentions(v); }

    template <typename Lookup>
    bool holds(Lookup&& value_of) const {
        Rational v = term_.evaluate(value_of);
        return rel_ == Rel::EqZero ? v == 0 : v <= 0;
    }

    bool operator==(const Atom& o) const { return rel_ == o.rel_ && term_ == o.term_; }
    bool operator<(const Atom& o) const {
        if (rel_ != o.rel_)
            return rel_ < o.rel_;
        return term_ < o.term_;
    }

  private:
    void normalize();

    LinearTerm term_;
    Rel rel_;
};

/// Renders a term as e.g. "2*i - j + 1"; "0" when empty.
std::string to_string(const LinearTerm& t);

/// Renders an atom in a balanced form such as "i - j <= 5" or "x == y",
/// moving negative monomials to the right-hand side. Injective on
/// normalized atoms and parseable by the frontend's condition parser.
std::string to_string(const Atom& a);

}  // namespace termdec
