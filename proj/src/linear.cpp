#include "termdec/linear.hpp"

#include <sstream>

namespace termdec {

const Variable kOldRnk("oldrnk");

void Atom::normalize() {
    // Scale to integer coefficients with overall gcd 1.
    Integer lcm_den = 1;
    for (const auto& [v, c] : term_.coefficients())
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(term_.constant_part()));
    if (lcm_den != 1)
        term_ *= Rational(lcm_den);

    Integer g = boost::multiprecision::abs(numerator(term_.constant_part()));
    for (const auto& [v, c] : term_.coefficients())
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(numerator(c)));
    if (g > 1)
        term_ *= Rational(Integer(1), g);

    if (rel_ == Rel::EqZero && !term_.is_constant()) {
        // Positive leading coefficient for a canonical orientation.
        if (term_.coefficients().begin()->second < 0)
            term_ *= Rational(-1);
    }
}

std::string to_string(const LinearTerm& t) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : t.coefficients()) {
        if (first) {
            if (c == -1)
                os << "-";
            else if (c != 1)
                os << to_string(c) << "*";
            os << v.name();
            first = false;
            continue;
        }
        if (c < 0)
            os << " - ";
        else
            os << " + ";
        Rational a = boost::multiprecision::abs(c);
        if (a != 1)
            os << to_string(a) << "*";
        os << v.name();
    }
    const Rational& k = t.constant_part();
    if (first) {
        os << to_string(k);
    } else if (k != 0) {
        os << (k < 0 ? " - " : " + ") << to_string(boost::multiprecision::abs(k));
    }
    return os.str();
}

std::string to_string(const Atom& a) {
    // Split into positive and negative parts: pos <= neg (or ==), keeping a
    // variable part on the left where possible ("i >= 1" over "1 <= i").
    LinearTerm pos, neg;
    for (const auto& [v, c] : a.term().coefficients()) {
        if (c > 0)
            pos.set_coefficient(v, c);
        else
            neg.set_coefficient(v, -c);
    }
    const Rational& k = a.term().constant_part();
    if (k > 0)
        pos += LinearTerm::constant(k);
    else if (k < 0)
        neg += LinearTerm::constant(-k);
    if (a.rel() == Rel::EqZero)
        return to_string(pos) + " == " + to_string(neg);
    if (pos.is_constant() && !neg.is_constant())
        return to_string(neg) + " >= " + to_string(pos);
    return to_string(pos) + " <= " + to_string(neg);
}

}  // namespace termdec
