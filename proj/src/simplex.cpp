#include "termdec/simplex.hpp"

#include <algorithm>

namespace termdec {

namespace {

/// Dense phase-1 tableau. Unrestricted variables are split into positive and
/// negative parts; every row gets a nonnegative right-hand side and either a
/// slack or an artificial basic variable. Bland's rule guarantees
/// termination.
class Phase1Simplex {
  public:
    // rows: pairs (coefficients over columns, rhs); kind: true = equality.
    Phase1Simplex(std::size_t structural_cols) : structural_cols_(structural_cols) {}

    void add_row(std::vector<Rational> coeffs, Rational rhs, bool equality) {
        rows_.push_back({std::move(coeffs), std::move(rhs), equality});
    }

    /// Returns the structural-column values of a feasible point, or nullopt.
    std::optional<std::vector<Rational>> solve() {
        build_tableau();
        while (true) {
            // Bland: entering column = smallest index with negative reduced cost.
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_)
                break;
            // Leaving row: minimum ratio, ties by smallest basic index.
            std::size_t leave = rows_.size();
            Rational best_ratio = 0;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = tab_[i][enter];
                if (a <= 0)
                    continue;
                Rational ratio = rhs_[i] / a;
                if (leave == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows_.size())
                break;  // unbounded; cannot happen in phase 1
            pivot(leave, enter);
        }
        if (obj_value_ != 0)
            return std::nullopt;
        std::vector<Rational> point(structural_cols_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] < structural_cols_)
                point[basis_[i]] = rhs_[i];
        return point;
    }

  private:
    struct Row {
        std::vector<Rational> coeffs;
        Rational rhs;
        bool equality;
    };

    void build_tableau() {
        std::size_t m = rows_.size();
        std::size_t slack_count = 0;
        for (const Row& r : rows_)
            if (!r.equality)
                ++slack_count;
        // Column layout: structural | slacks | artificials.
        std::size_t slack_base = structural_cols_;
        std::size_t art_base = slack_base + slack_count;
        cols_ = art_base + m;  // worst case one artificial per row

        tab_.assign(m, std::vector<Rational>(cols_, Rational(0)));
        rhs_.assign(m, Rational(0));
        basis_.assign(m, 0);
        obj_.assign(cols_, Rational(0));
        obj_value_ = 0;

        std::size_t slack_idx = 0;
        std::vector<std::size_t> artificial_rows;
        for (std::size_t i = 0; i < m; ++i) {
            Row r = rows_[i];
            if (r.rhs < 0) {
                for (Rational& c : r.coeffs)
                    c = -c;
                r.rhs = -r.rhs;
                if (!r.equality) {
                    // -ax <= -b became ax >= b: surplus column.
                    for (std::size_t j = 0; j < structural_cols_; ++j)
                        tab_[i][j] = r.coeffs[j];
                    tab_[i][slack_base + slack_idx] = -1;
                    ++slack_idx;
                    rhs_[i] = r.rhs;
                    artificial_rows.push_back(i);
                    continue;
                }
            }
            for (std::size_t j = 0; j < structural_cols_; ++j)
                tab_[i][j] = r.coeffs[j];
            rhs_[i] = r.rhs;
            if (!r.equality) {
                tab_[i][slack_base + slack_idx] = 1;
                basis_[i] = slack_base + slack_idx;
                ++slack_idx;
            } else {
                artificial_rows.push_back(i);
            }
        }
        for (std::size_t i : artificial_rows) {
            std::size_t col = art_base + i;
            tab_[i][col] = 1;
            basis_[i] = col;
            // Objective: minimize the sum of artificials.
            obj_[col] = 1;
        }
        // Price out the basic artificial columns.
        for (std::size_t i : artificial_rows) {
            for (std::size_t j = 0; j < cols_; ++j)
                obj_[j] -= tab_[i][j];
            obj_value_ += rhs_[i];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        Rational p = tab_[row][col];
        for (Rational& c : tab_[row])
            c /= p;
        rhs_[row] /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == row)
                continue;
            Rational f = tab_[i][col];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < cols_; ++j)
                tab_[i][j] -= f * tab_[row][j];
            rhs_[i] -= f * rhs_[row];
        }
        Rational f = obj_[col];
        if (f != 0) {
            for (std::size_t j = 0; j < cols_; ++j)
                obj_[j] -= f * tab_[row][j];
            obj_value_ += f * rhs_[row];
        }
        basis_[row] = col;
    }

    std::size_t structural_cols_;
    std::size_t cols_ = 0;
    std::vector<Row> rows_;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> rhs_;
    std::vector<Rational> obj_;
    Rational obj_value_ = 0;
    std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::map<Variable, Rational>> lp_feasible(const std::vector<Atom>& constraints) {
    std::vector<Variable> vars;
    for (const Atom& a : constraints)
        for (const auto& [v, c] : a.term().coefficients())
            vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::map<Variable, std::size_t> index;
    for (std::size_t i = 0; i < vars.size(); ++i)
        index[vars[i]] = i;

    // Each unrestricted variable becomes x+ - x-.
    std::size_t n = vars.size() * 2;
    Phase1Simplex simplex(n);
    for (const Atom& a : constraints) {
        if (a.term().is_constant()) {
            bool ok = a.rel() == Rel::EqZero ? a.term().constant_part() == 0
                                             : a.term().constant_part() <= 0;
            if (!ok)
                return std::nullopt;
            continue;
        }
        std::vector<Rational> coeffs(n, Rational(0));
        for (const auto& [v, c] : a.term().coefficients()) {
            std::size_t i = index[v];
            coeffs[2 * i] = c;
            coeffs[2 * i + 1] = -c;
        }
        // term <= 0  ==>  coeffs . x <= -constant
        simplex.add_row(std::move(coeffs), -a.term().constant_part(), a.rel() == Rel::EqZero);
    }
    auto point = simplex.solve();
    if (!point.has_value())
        return std::nullopt;
    std::map<Variable, Rational> out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        Rational v = (*point)[2 * i] - (*point)[2 * i + 1];
        if (v != 0)
            out[vars[i]] = v;
    }
    return out;
}

}  // namespace termdec
