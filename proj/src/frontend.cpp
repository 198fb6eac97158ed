#include "termdec/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <variant>

namespace termdec {

namespace {

// ---------------------------------------------------------------- lexer ----

enum class Tok {
    Ident,
    Number,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Colon,
    Assign,  // :=
    Arrow,   // ->
    Plus,
    Minus,
    Star,
    AndAnd,
    OrOr,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Neq,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.col); }

  private:
    void advance() {
        skip_ws();
        tok_ = {Tok::End, "", line_, col_};
        if (pos_ >= src_.size())
            return;
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                id.push_back(get());
            tok_.kind = Tok::Ident;
            tok_.text = std::move(id);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                num.push_back(get());
            tok_.kind = Tok::Number;
            tok_.text = std::move(num);
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (two(':', '=')) {
            get(), get();
            tok_.kind = Tok::Assign;
            return;
        }
        if (two('-', '>')) {
            get(), get();
            tok_.kind = Tok::Arrow;
            return;
        }
        if (two('&', '&')) {
            get(), get();
            tok_.kind = Tok::AndAnd;
            return;
        }
        if (two('|', '|')) {
            get(), get();
            tok_.kind = Tok::OrOr;
            return;
        }
        if (two('<', '=')) {
            get(), get();
            tok_.kind = Tok::Le;
            return;
        }
        if (two('>', '=')) {
            get(), get();
            tok_.kind = Tok::Ge;
            return;
        }
        if (two('=', '=')) {
            get(), get();
            tok_.kind = Tok::EqEq;
            return;
        }
        if (two('!', '=')) {
            get(), get();
            tok_.kind = Tok::Neq;
            return;
        }
        get();
        switch (c) {
        case '(': tok_.kind = Tok::LParen; return;
        case ')': tok_.kind = Tok::RParen; return;
        case '{': tok_.kind = Tok::LBrace; return;
        case '}': tok_.kind = Tok::RBrace; return;
        case ';': tok_.kind = Tok::Semi; return;
        case ',': tok_.kind = Tok::Comma; return;
        case ':': tok_.kind = Tok::Colon; return;
        case '+': tok_.kind = Tok::Plus; return;
        case '-': tok_.kind = Tok::Minus; return;
        case '*': tok_.kind = Tok::Star; return;
        case '<': tok_.kind = Tok::Lt; return;
        case '>': tok_.kind = Tok::Gt; return;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", tok_.line, tok_.col);
        }
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    char get() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_{Tok::End, "", 1, 1};
};

// -------------------------------------------------- expressions & conds ----

/// Comparisons before integer tightening; Ne is eliminated by edge splitting.
enum class CmpOp { Le, Eq, Ne };

struct Comparison {
    LinearTerm term;  // term <op> 0
    CmpOp op;
};

/// A condition in negation-free form: disjunction of conjunctions.
struct CondNode {
    enum class Kind { Cmp, And, Or, True, False } kind;
    Comparison cmp{LinearTerm(), CmpOp::Le};
    std::vector<CondNode> children;
};

class ExprParser {
  public:
    ExprParser(Lexer& lex, bool allow_oldrnk) : lex_(lex), allow_oldrnk_(allow_oldrnk) {}

    LinearTerm parse_expr() {
        LinearTerm t = parse_term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool plus = lex_.take().kind == Tok::Plus;
            LinearTerm r = parse_term();
            if (plus)
                t += r;
            else
                t -= r;
        }
        return t;
    }

    Comparison parse_comparison() {
        LinearTerm lhs = parse_expr();
        Tok op = lex_.peek().kind;
        switch (op) {
        case Tok::Lt:
        case Tok::Le:
        case Tok::Gt:
        case Tok::Ge:
        case Tok::EqEq:
        case Tok::Neq:
            break;
        default:
            lex_.fail("expected comparison operator");
        }
        lex_.take();
        LinearTerm rhs = parse_expr();
        switch (op) {
        case Tok::Lt:  // lhs < rhs  ==>  lhs - rhs + 1 <= 0
            return {lhs - rhs + LinearTerm::constant(1), CmpOp::Le};
        case Tok::Le:
            return {lhs - rhs, CmpOp::Le};
        case Tok::Gt:
            return {rhs - lhs + LinearTerm::constant(1), CmpOp::Le};
        case Tok::Ge:
            return {rhs - lhs, CmpOp::Le};
        case Tok::EqEq:
            return {lhs - rhs, CmpOp::Eq};
        default:
            return {lhs - rhs, CmpOp::Ne};
        }
    }

    CondNode parse_condition() { return parse_or(); }

  private:
    CondNode parse_or() {
        CondNode n = parse_and();
        while (lex_.peek().kind == Tok::OrOr) {
            lex_.take();
            CondNode rhs = parse_and();
            CondNode o{CondNode::Kind::Or};
            o.children = {std::move(n), std::move(rhs)};
            n = std::move(o);
        }
        return n;
    }

    CondNode parse_and() {
        CondNode n = parse_primary();
        while (lex_.peek().kind == Tok::AndAnd) {
            lex_.take();
            CondNode rhs = parse_primary();
            CondNode a{CondNode::Kind::And};
            a.children = {std::move(n), std::move(rhs)};
            n = std::move(a);
        }
        return n;
    }

    CondNode parse_primary() {
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "true") {
            lex_.take();
            return CondNode{CondNode::Kind::True};
        }
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "false") {
            lex_.take();
            return CondNode{CondNode::Kind::False};
        }
        if (lex_.peek().kind == Tok::LParen) {
            // Could be a parenthesized condition or a parenthesized
            // arithmetic expression followed by a comparison. Try the
            // condition first by scanning for a comparison operator at
            // depth 0 after the matching paren: simplest is to parse a
            // condition and require it to close.
            Lexer saved = lex_;
            lex_.take();
            try {
                CondNode inner = parse_or();
                if (lex_.peek().kind == Tok::RParen) {
                    lex_.take();
                    return inner;
                }
            } catch (const ParseError&) {
            }
            lex_ = saved;  // fall through to a plain comparison
        }
        CondNode n{CondNode::Kind::Cmp};
        n.cmp = parse_comparison();
        return n;
    }

    LinearTerm parse_term() {
        LinearTerm t = parse_factor();
        while (lex_.peek().kind == Tok::Star) {
            Token star = lex_.take();
            LinearTerm r = parse_factor();
            if (t.is_constant()) {
                r *= t.constant_part();
                t = std::move(r);
            } else if (r.is_constant()) {
                t *= r.constant_part();
            } else {
                throw ParseError("nonlinear expression", star.line, star.col);
            }
        }
        return t;
    }

    LinearTerm parse_factor() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Number) {
            Token n = lex_.take();
            return LinearTerm::constant(Rational(Integer(n.text)));
        }
        if (t.kind == Tok::Minus) {
            lex_.take();
            return -parse_factor();
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            LinearTerm inner = parse_expr();
            if (lex_.peek().kind != Tok::RParen)
                lex_.fail("expected ')'");
            lex_.take();
            return inner;
        }
        if (t.kind == Tok::Ident) {
            Token id = lex_.take();
            if (!allow_oldrnk_ && id.text == kOldRnk.name())
                throw ParseError("'oldrnk' is reserved", id.line, id.col);
            return LinearTerm(Variable(id.text));
        }
        lex_.fail("expected expression");
    }

    Lexer& lex_;
    bool allow_oldrnk_;
};

// A guard cube during lowering: conjunction of comparisons.
using CmpCube = std::vector<Comparison>;

void negate_into(const CondNode& n, CondNode& out);

CondNode negate(const CondNode& n) {
    CondNode out{CondNode::Kind::True};
    negate_into(n, out);
    return out;
}

void negate_into(const CondNode& n, CondNode& out) {
    switch (n.kind) {
    case CondNode::Kind::True:
        out = CondNode{CondNode::Kind::False};
        return;
    case CondNode::Kind::False:
        out = CondNode{CondNode::Kind::True};
        return;
    case CondNode::Kind::Cmp: {
        out = CondNode{CondNode::Kind::Cmp};
        switch (n.cmp.op) {
        case CmpOp::Le:  // !(t <= 0)  ==>  t >= 1  ==>  -t + 1 <= 0
            out.cmp = {-n.cmp.term + LinearTerm::constant(1), CmpOp::Le};
            return;
        case CmpOp::Eq:
            out.cmp = {n.cmp.term, CmpOp::Ne};
            return;
        case CmpOp::Ne:
            out.cmp = {n.cmp.term, CmpOp::Eq};
            return;
        }
        return;
    }
    case CondNode::Kind::And:
    case CondNode::Kind::Or: {
        out = CondNode{n.kind == CondNode::Kind::And ? CondNode::Kind::Or : CondNode::Kind::And};
        out.children.resize(n.children.size());
        for (std::size_t i = 0; i < n.children.size(); ++i)
            negate_into(n.children[i], out.children[i]);
        return;
    }
    }
}

void dnf(const CondNode& n, std::vector<CmpCube>& out) {
    switch (n.kind) {
    case CondNode::Kind::True:
        out.push_back({});
        return;
    case CondNode::Kind::False:
        return;
    case CondNode::Kind::Cmp:
        out.push_back({n.cmp});
        return;
    case CondNode::Kind::Or:
        for (const CondNode& c : n.children)
            dnf(c, out);
        return;
    case CondNode::Kind::And: {
        std::vector<CmpCube> acc{{}};
        for (const CondNode& c : n.children) {
            std::vector<CmpCube> parts;
            dnf(c, parts);
            std::vector<CmpCube> next;
            for (const CmpCube& a : acc)
                for (const CmpCube& b : parts) {
                    CmpCube m = a;
                    m.insert(m.end(), b.begin(), b.end());
                    next.push_back(std::move(m));
                }
            acc = std::move(next);
        }
        for (CmpCube& c : acc)
            out.push_back(std::move(c));
        return;
    }
    }
}

/// Expands != atoms into (< and >) cases and converts to normalized guards.
/// Cubes with a trivially false atom are dropped.
std::vector<std::vector<Atom>> expand_guards(const std::vector<CmpCube>& cubes) {
    std::vector<std::vector<Atom>> out;
    for (const CmpCube& cube : cubes) {
        std::vector<std::vector<Atom>> pending{{}};
        bool dead = false;
        for (const Comparison& c : cube) {
            if (c.op == CmpOp::Ne) {
                std::vector<std::vector<Atom>> next;
                Atom lo = Atom::leq_zero(c.term + LinearTerm::constant(1));   // t <= -1
                Atom hi = Atom::leq_zero(-c.term + LinearTerm::constant(1));  // t >= 1
                for (const auto& p : pending) {
                    if (!lo.is_trivially_false()) {
                        auto q = p;
                        q.push_back(lo);
                        next.push_back(std::move(q));
                    }
                    if (!hi.is_trivially_false()) {
                        auto q = p;
                        q.push_back(hi);
                        next.push_back(std::move(q));
                    }
                }
                pending = std::move(next);
                continue;
            }
            Atom a = c.op == CmpOp::Le ? Atom::leq_zero(c.term) : Atom::eq_zero(c.term);
            if (a.is_trivially_false()) {
                dead = true;
                break;
            }
            for (auto& p : pending)
                p.push_back(a);
        }
        if (dead)
            continue;
        for (auto& p : pending)
            out.push_back(std::move(p));
    }
    return out;
}

// ------------------------------------------------------ wprog lowering ----

class WhileLowering {
  public:
    explicit WhileLowering(Lexer& lex) : lex_(lex), expr_(lex, /*allow_oldrnk=*/false) {}

    Program run() {
        expect_ident("program");
        if (lex_.peek().kind != Tok::Ident)
            lex_.fail("expected program name");
        lex_.take();
        expect(Tok::LParen, "(");
        while (lex_.peek().kind != Tok::RParen) {
            expect_ident("int");
            if (lex_.peek().kind != Tok::Ident)
                lex_.fail("expected parameter name");
            Token p = lex_.take();
            if (p.text == kOldRnk.name())
                throw ParseError("'oldrnk' is reserved", p.line, p.col);
            if (lex_.peek().kind == Tok::Comma)
                lex_.take();
            else
                break;
        }
        expect(Tok::RParen, ")");
        if (lex_.peek().kind == Tok::Semi)
            lex_.take();

        Location entry = fresh();
        initial_ = entry;
        Location exit;
        if (lex_.peek().kind == Tok::LBrace) {
            lex_.take();
            exit = lower_stmts(entry, Tok::RBrace);
            expect(Tok::RBrace, "}");
        } else {
            exit = lower_stmts(entry, Tok::End);
        }
        (void)exit;
        if (lex_.peek().kind != Tok::End)
            lex_.fail("trailing input after program");
        return finish();
    }

  private:
    Location lower_stmts(Location entry, Tok terminator) {
        Location cur = entry;
        while (lex_.peek().kind != terminator && lex_.peek().kind != Tok::End)
            cur = lower_stmt(cur);
        return cur;
    }

    Location lower_stmt(Location cur) {
        const Token& t = lex_.peek();
        if (t.kind != Tok::Ident)
            lex_.fail("expected statement");
        if (t.text == "while")
            return lower_while(cur);
        if (t.text == "if")
            return lower_if(cur);
        if (t.text == "assume") {
            lex_.take();
            expect(Tok::LParen, "(");
            CondNode cond = expr_.parse_condition();
            expect(Tok::RParen, ")");
            expect(Tok::Semi, ";");
            Location next = fresh();
            add_guard_edges(cur, cond, next);
            return next;
        }
        if (t.text == "havoc") {
            lex_.take();
            if (lex_.peek().kind != Tok::Ident)
                lex_.fail("expected variable");
            Token v = lex_.take();
            if (v.text == kOldRnk.name())
                throw ParseError("'oldrnk' is reserved", v.line, v.col);
            expect(Tok::Semi, ";");
            Location next = fresh();
            edges_.push_back({cur, Statement::havoc(Variable(v.text)), next});
            return next;
        }
        // assignment
        Token v = lex_.take();
        if (v.text == kOldRnk.name())
            throw ParseError("'oldrnk' is reserved", v.line, v.col);
        expect(Tok::Assign, ":=");
        LinearTerm rhs = expr_.parse_expr();
        expect(Tok::Semi, ";");
        Location next = fresh();
        edges_.push_back({cur, Statement::assign(Variable(v.text), std::move(rhs)), next});
        return next;
    }

    Location lower_while(Location head) {
        lex_.take();  // while
        expect(Tok::LParen, "(");
        CondNode cond = expr_.parse_condition();
        expect(Tok::RParen, ")");
        expect(Tok::LBrace, "{");
        Location body = fresh();
        add_guard_edges(head, cond, body);
        Location body_exit = lower_stmts(body, Tok::RBrace);
        expect(Tok::RBrace, "}");
        redirect(body_exit, head);
        Location after = fresh();
        add_guard_edges(head, negate(cond), after);
        return after;
    }

    Location lower_if(Location entry) {
        lex_.take();  // if
        expect(Tok::LParen, "(");
        CondNode cond = expr_.parse_condition();
        expect(Tok::RParen, ")");
        expect(Tok::LBrace, "{");
        Location then_start = fresh();
        add_guard_edges(entry, cond, then_start);
        Location then_exit = lower_stmts(then_start, Tok::RBrace);
        expect(Tok::RBrace, "}");

        Location join = fresh();
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "else") {
            lex_.take();
            expect(Tok::LBrace, "{");
            Location else_start = fresh();
            add_guard_edges(entry, negate(cond), else_start);
            Location else_exit = lower_stmts(else_start, Tok::RBrace);
            expect(Tok::RBrace, "}");
            redirect(else_exit, join);
        } else {
            add_guard_edges(entry, negate(cond), join);
        }
        redirect(then_exit, join);
        return join;
    }

    void add_guard_edges(Location from, const CondNode& cond, Location to) {
        std::vector<CmpCube> cubes;
        dnf(cond, cubes);
        for (auto& guard : expand_guards(cubes))
            edges_.push_back({from, Statement::assume(std::move(guard)), to});
    }

    Location fresh() {
        aliases_.push_back(static_cast<Location>(aliases_.size()));
        return static_cast<Location>(aliases_.size() - 1);
    }

    void redirect(Location from, Location to) {
        if (from != to)
            aliases_[from] = to;
    }

    Location resolve(Location l) const {
        while (aliases_[l] != l)
            l = aliases_[l];
        return l;
    }

    Program finish() {
        // Resolve merged locations.
        for (Edge& e : edges_) {
            e.src = resolve(e.src);
            e.dst = resolve(e.dst);
        }
        Location init = resolve(initial_);

        // Keep only locations reachable from the initial location, then
        // repeatedly drop non-initial locations with no outgoing edge.
        // Infinite traces are unaffected.
        std::size_t n = aliases_.size();
        std::vector<bool> alive(n, false);
        {
            std::vector<Location> work{init};
            alive[init] = true;
            while (!work.empty()) {
                Location l = work.back();
                work.pop_back();
                for (const Edge& e : edges_)
                    if (e.src == l && !alive[e.dst]) {
                        alive[e.dst] = true;
                        work.push_back(e.dst);
                    }
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (Location l = 0; l < n; ++l) {
                if (!alive[l] || l == init)
                    continue;
                bool has_out = false;
                for (const Edge& e : edges_)
                    if (e.src == l && alive[e.dst] && alive[e.src]) {
                        has_out = true;
                        break;
                    }
                if (!has_out) {
                    alive[l] = false;
                    changed = true;
                }
            }
        }

        std::vector<Location> renumber(n, 0);
        std::vector<std::string> names;
        for (Location l = 0; l < n; ++l) {
            if (alive[l]) {
                renumber[l] = static_cast<Location>(names.size());
                names.push_back("l" + std::to_string(names.size()));
            }
        }
        std::vector<Edge> kept;
        for (const Edge& e : edges_)
            if (alive[e.src] && alive[e.dst])
                kept.push_back({renumber[e.src], e.stmt, renumber[e.dst]});
        return Program(std::move(names), renumber[init], std::move(kept));
    }

    void expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind)
            lex_.fail(std::string("expected '") + what + "'");
        lex_.take();
    }

    void expect_ident(const char* word) {
        if (lex_.peek().kind != Tok::Ident || lex_.peek().text != word)
            lex_.fail(std::string("expected '") + word + "'");
        lex_.take();
    }

    Lexer& lex_;
    ExprParser expr_;
    std::vector<Edge> edges_;
    std::vector<Location> aliases_;
    Location initial_ = 0;
};

// -------------------------------------------------------------- .cfg -------

std::vector<Atom> parse_atom_conjunction(Lexer& lex, bool allow_oldrnk) {
    ExprParser expr(lex, allow_oldrnk);
    if (lex.peek().kind == Tok::Ident && lex.peek().text == "true") {
        lex.take();
        return {};
    }
    std::vector<Atom> atoms;
    while (true) {
        Comparison c = expr.parse_comparison();
        if (c.op == CmpOp::Ne)
            lex.fail("'!=' is not allowed here");
        atoms.push_back(c.op == CmpOp::Le ? Atom::leq_zero(c.term) : Atom::eq_zero(c.term));
        if (lex.peek().kind == Tok::AndAnd) {
            lex.take();
            continue;
        }
        break;
    }
    return atoms;
}

Statement parse_cfg_statement(Lexer& lex, bool allow_oldrnk = false) {
    ExprParser expr(lex, allow_oldrnk);
    const Token& t = lex.peek();
    if (t.kind != Tok::Ident)
        lex.fail("expected statement");
    if (t.text == "assume") {
        lex.take();
        return Statement::assume(parse_atom_conjunction(lex, allow_oldrnk));
    }
    if (t.text == "havoc") {
        lex.take();
        if (lex.peek().kind != Tok::Ident)
            lex.fail("expected variable");
        Token v = lex.take();
        if (!allow_oldrnk && v.text == kOldRnk.name())
            throw ParseError("'oldrnk' is reserved", v.line, v.col);
        return Statement::havoc(Variable(v.text));
    }
    Token v = lex.take();
    if (!allow_oldrnk && v.text == kOldRnk.name())
        throw ParseError("'oldrnk' is reserved", v.line, v.col);
    if (lex.peek().kind != Tok::Assign)
        lex.fail("expected ':='");
    lex.take();
    return Statement::assign(Variable(v.text), expr.parse_expr());
}

}  // namespace

Program parse_while_program(std::string_view source) {
    Lexer lex(source);
    WhileLowering lowering(lex);
    return lowering.run();
}

Program parse_cfg(std::string_view source) {
    Lexer lex(source);
    std::map<std::string, Location> ids;
    std::vector<std::string> names;
    auto loc = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end())
            return it->second;
        auto l = static_cast<Location>(names.size());
        ids.emplace(name, l);
        names.push_back(name);
        return l;
    };

    std::optional<Location> init;
    std::vector<Edge> edges;
    while (lex.peek().kind != Tok::End) {
        if (lex.peek().kind != Tok::Ident)
            lex.fail("expected 'init' or a location");
        if (lex.peek().text == "init") {
            Token kw = lex.take();
            if (init.has_value())
                throw ParseError("duplicate init", kw.line, kw.col);
            if (lex.peek().kind != Tok::Ident)
                lex.fail("expected location after 'init'");
            init = loc(lex.take().text);
        } else {
            Location src = loc(lex.take().text);
            if (lex.peek().kind != Tok::Arrow)
                lex.fail("expected '->'");
            lex.take();
            if (lex.peek().kind != Tok::Ident)
                lex.fail("expected target location");
            Location dst = loc(lex.take().text);
            if (lex.peek().kind != Tok::Colon)
                lex.fail("expected ':'");
            lex.take();
            edges.push_back({src, parse_cfg_statement(lex), dst});
        }
        if (lex.peek().kind != Tok::Semi)
            lex.fail("expected ';'");
        lex.take();
    }
    if (!init.has_value())
        throw ParseError("missing init declaration", 1, 1);
    return Program(std::move(names), *init, std::move(edges));
}

std::string render_cfg(const Program& p) {
    std::ostringstream os;
    os << "init " << p.location_name(p.initial()) << ";\n";
    for (const Edge& e : p.edges())
        os << p.location_name(e.src) << " -> " << p.location_name(e.dst) << " : " << e.stmt.text() << ";\n";
    return os.str();
}

Statement parse_statement_text(std::string_view text) {
    Lexer lex(text);
    Statement st = parse_cfg_statement(lex, /*allow_oldrnk=*/true);
    if (lex.peek().kind != Tok::End)
        lex.fail("trailing input after statement");
    return st;
}

std::vector<Atom> parse_constraint_atoms(std::string_view text) {
    Lexer lex(text);
    std::vector<Atom> atoms = parse_atom_conjunction(lex, /*allow_oldrnk=*/true);
    if (lex.peek().kind != Tok::End)
        lex.fail("trailing input after constraint");
    return atoms;
}

}  // namespace termdec
