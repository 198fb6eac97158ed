#include "termdec/certifier.hpp"

#include <algorithm>
#include <sstream>

namespace termdec {

namespace {

/// Recovers the statement order of a lasso module: the unique path from the
/// initial location to the final one, then the cycle back. Every location of
/// a lasso module has exactly one outgoing edge.
struct LassoShape {
    std::vector<Edge> stem;
    std::vector<Edge> loop;
};

LassoShape lasso_shape(const Module& m) {
    const Program& p = m.program();
    LassoShape shape;
    Location cur = m.initial();
    std::vector<bool> seen(p.location_count(), false);
    while (cur != m.final_location()) {
        if (seen[cur])
            throw std::invalid_argument("not a lasso module: stem revisits a location");
        seen[cur] = true;
        auto out = p.out_edges(cur);
        if (out.size() != 1)
            throw std::invalid_argument("not a lasso module: location without unique successor");
        shape.stem.push_back(out[0]);
        cur = out[0].dst;
    }
    do {
        auto out = p.out_edges(cur);
        if (out.size() != 1)
            throw std::invalid_argument("not a lasso module: location without unique successor");
        shape.loop.push_back(out[0]);
        cur = out[0].dst;
    } while (cur != m.final_location());
    if (shape.stem.size() + shape.loop.size() != p.edges().size())
        throw std::invalid_argument("not a lasso module: disconnected edges");
    return shape;
}

Predicate head_predicate(const Cube& invariant, const RankingFunction& f) {
    std::vector<Cube> cubes;
    Cube inf(invariant.atoms(), OldrnkMode::Inf);
    if (is_sat(inf))
        cubes.push_back(std::move(inf));
    LinearTerm ft = f.as_term();
    std::vector<Atom> fin_atoms = invariant.atoms();
    fin_atoms.push_back(Atom::leq_zero(ft - LinearTerm(kOldRnk) + LinearTerm::constant(1)));
    fin_atoms.push_back(Atom::leq_zero(-LinearTerm(kOldRnk)));
    Cube fin(std::move(fin_atoms), OldrnkMode::Finite);
    if (is_sat(fin))
        cubes.push_back(std::move(fin));
    return Predicate(std::move(cubes));
}

}  // namespace

RankCertificate build_certificate(const Module& lasso_module, const RankingFunction& f,
                                  const Cube& invariant) {
    if (lasso_module.initial() == lasso_module.final_location())
        throw std::invalid_argument("certificate construction needs a non-empty stem");
    LassoShape shape = lasso_shape(lasso_module);

    RankCertificate cert;
    Predicate inf_top = Predicate(Cube::top(OldrnkMode::Inf));
    Predicate cur = inf_top;
    cert.at[lasso_module.initial()] = cur;
    for (const Edge& e : shape.stem) {
        cur = strongest_post(cur, e.stmt);
        if (e.dst != lasso_module.final_location())
            cert.at[e.dst] = cur;
    }

    Predicate head = head_predicate(invariant, f);
    cert.at[lasso_module.final_location()] = head;
    if (!entails(cur, head))
        throw CertificateClosureError("stem postcondition does not establish the loop-head predicate");

    // When even the plain "oldrnk is infinite" annotation re-establishes the
    // loop head, prefer it for every stem location: equal annotations merge
    // into one module state, which keeps the generalized module small.
    if (!shape.stem.empty() &&
        entails(strongest_post(inf_top, shape.stem.back().stmt), head)) {
        for (const Edge& e : shape.stem)
            if (e.dst != lasso_module.final_location())
                cert.at[e.dst] = inf_top;
    }

    Predicate around = strongest_post_rank_update(head, f.as_term());
    for (const Edge& e : shape.loop) {
        around = strongest_post(around, e.stmt);
        if (e.dst != lasso_module.final_location())
            cert.at[e.dst] = around;
    }
    if (!entails(around, head))
        throw CertificateClosureError("loop postcondition does not re-establish the loop-head predicate");
    return cert;
}

CheckResult check_certificate(const CertifiedModule& cm) {
    CheckResult result;
    const Program& p = cm.module.program();
    auto predicate_at = [&cm](Location l) -> const Predicate& {
        auto it = cm.cert.at.find(l);
        if (it == cm.cert.at.end())
            throw std::invalid_argument("certificate misses a location");
        return it->second;
    };

    Predicate initial_expected(Cube::top(OldrnkMode::Inf));
    try {
        const Predicate& init = predicate_at(cm.module.initial());
        if (!entails(init, initial_expected) || !entails(initial_expected, init))
            result.violations.push_back({CertificateViolation::Condition::InitialPredicate, std::nullopt,
                                         "initial predicate is " + to_string(init)});
    } catch (const std::invalid_argument& e) {
        result.violations.push_back(
            {CertificateViolation::Condition::InitialPredicate, std::nullopt, e.what()});
        return result;
    }

    const Predicate& final_pred = predicate_at(cm.module.final_location());
    if (!entails(final_pred, rank_strictly_below_oldrnk(cm.rank.as_term())))
        result.violations.push_back({CertificateViolation::Condition::FinalDecrease, std::nullopt,
                                     "final predicate is " + to_string(final_pred)});

    for (const Edge& e : p.edges()) {
        bool valid;
        try {
            if (e.src == cm.module.final_location())
                valid = hoare_valid_with_rank_update(predicate_at(e.src), cm.rank.as_term(), e.stmt,
                                                     predicate_at(e.dst));
            else
                valid = hoare_valid(predicate_at(e.src), e.stmt, predicate_at(e.dst));
        } catch (const std::invalid_argument& ex) {
            result.violations.push_back({CertificateViolation::Condition::EdgeInductive, e, ex.what()});
            continue;
        }
        if (!valid) {
            std::ostringstream os;
            os << "{" << to_string(predicate_at(e.src)) << "} " << e.stmt.text() << " {"
               << to_string(predicate_at(e.dst)) << "} is not valid";
            result.violations.push_back({CertificateViolation::Condition::EdgeInductive, e, os.str()});
        }
    }
    return result;
}

RankDecreaseProgram build_rankdecrease_program(const LassoTrace& t, const RankingFunction& f) {
    if (t.loop.empty())
        throw std::invalid_argument("lasso loop must be non-empty");
    std::size_t n = t.stem.size() + t.loop.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n + 2; ++i)
        names.push_back("r" + std::to_string(i));
    auto entry = static_cast<Location>(0);
    auto head = static_cast<Location>(1 + t.stem.size());
    auto error = static_cast<Location>(n + 1);

    LinearTerm ft = f.as_term();
    std::vector<Edge> edges;
    edges.push_back({entry, Statement::assume({}), 1});
    for (std::size_t i = 0; i < t.stem.size(); ++i)
        edges.push_back({static_cast<Location>(1 + i), t.stem[i], static_cast<Location>(2 + i)});
    // assert(f < oldrnk): both violation branches lead to the error location.
    edges.push_back({head, Statement::assume({Atom::leq_zero(LinearTerm(kOldRnk) - ft)}), error});
    edges.push_back({head, Statement::assume({Atom::leq_zero(LinearTerm(kOldRnk) + LinearTerm::constant(1))}), error});
    for (std::size_t i = 0; i < t.loop.size(); ++i) {
        auto src = static_cast<Location>(head + i);
        auto dst = i + 1 == t.loop.size() ? head : static_cast<Location>(head + i + 1);
        edges.push_back({src, t.loop[i], dst});
    }
    return RankDecreaseProgram{Program(std::move(names), entry, std::move(edges)), head, error};
}

bool check_rankdecrease_annotation(const RankDecreaseProgram& rd, const RankingFunction& f,
                                   const std::map<Location, Predicate>& annotation) {
    auto predicate_at = [&annotation](Location l) -> const Predicate& {
        auto it = annotation.find(l);
        if (it == annotation.end())
            throw std::invalid_argument("annotation misses a location");
        return it->second;
    };
    if (is_sat(predicate_at(rd.error_location)))
        return false;
    for (const Edge& e : rd.program.edges()) {
        bool composed = e.src == rd.loop_head && e.dst != rd.error_location;
        bool valid = composed
                         ? hoare_valid_with_rank_update(predicate_at(e.src), f.as_term(), e.stmt,
                                                        predicate_at(e.dst))
                         : hoare_valid(predicate_at(e.src), e.stmt, predicate_at(e.dst));
        if (!valid)
            return false;
    }
    return true;
}

}  // namespace termdec
