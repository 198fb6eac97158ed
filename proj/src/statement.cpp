#include "termdec/statement.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace termdec {

namespace {

struct StatementData {
    StatementKind kind;
    std::vector<Atom> guard;
    Variable lhs;
    LinearTerm rhs;
    std::string text;
};

std::string render(const StatementData& d) {
    switch (d.kind) {
    case StatementKind::Assume: {
        std::ostringstream os;
        os << "assume ";
        if (d.guard.empty()) {
            os << "true";
        } else {
            bool first = true;
            for (const Atom& a : d.guard) {
                if (!first)
                    os << " && ";
                os << to_string(a);
                first = false;
            }
        }
        return os.str();
    }
    case StatementKind::Assign:
        return d.lhs.name() + " := " + to_string(d.rhs);
    case StatementKind::Havoc:
        return "havoc " + d.lhs.name();
    }
    return {};
}

class InternPool {
  public:
    static InternPool& instance() {
        static InternPool pool;
        return pool;
    }

    std::uint32_t intern(StatementData d) {
        d.text = render(d);
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = by_text_.find(d.text);
        if (it != by_text_.end())
            return it->second;
        auto id = static_cast<std::uint32_t>(data_.size());
        by_text_.emplace(d.text, id);
        data_.push_back(std::move(d));
        return id;
    }

    const StatementData& get(std::uint32_t id) const {
        std::lock_guard<std::mutex> lock(mutex_);
        return data_[id];
    }

  private:
    mutable std::mutex mutex_;
    std::deque<StatementData> data_;
    std::unordered_map<std::string, std::uint32_t> by_text_;
};

}  // namespace

Statement Statement::assume(std::vector<Atom> guard) {
    // Drop trivially true atoms and canonicalize order so that equal guards
    // intern to the same letter.
    std::erase_if(guard, [](const Atom& a) { return a.is_trivially_true(); });
    std::sort(guard.begin(), guard.end());
    guard.erase(std::unique(guard.begin(), guard.end()), guard.end());
    StatementData d;
    d.kind = StatementKind::Assume;
    d.guard = std::move(guard);
    return Statement(InternPool::instance().intern(std::move(d)));
}

Statement Statement::assign(Variable lhs, LinearTerm rhs) {
    StatementData d;
    d.kind = StatementKind::Assign;
    d.lhs = std::move(lhs);
    d.rhs = std::move(rhs);
    return Statement(InternPool::instance().intern(std::move(d)));
}

Statement Statement::havoc(Variable v) {
    StatementData d;
    d.kind = StatementKind::Havoc;
    d.lhs = std::move(v);
    return Statement(InternPool::instance().intern(std::move(d)));
}

StatementKind Statement::kind() const { return InternPool::instance().get(id_).kind; }

std::span<const Atom> Statement::guard() const { return InternPool::instance().get(id_).guard; }

const Variable& Statement::lhs() const { return InternPool::instance().get(id_).lhs; }

const LinearTerm& Statement::rhs() const { return InternPool::instance().get(id_).rhs; }

const std::string& Statement::text() const { return InternPool::instance().get(id_).text; }

std::vector<Variable> Statement::variables() const {
    const StatementData& d = InternPool::instance().get(id_);
    std::vector<Variable> out;
    switch (d.kind) {
    case StatementKind::Assume:
        for (const Atom& a : d.guard)
            for (const auto& [v, c] : a.term().coefficients())
                out.push_back(v);
        break;
    case StatementKind::Assign:
        out.push_back(d.lhs);
        for (const auto& [v, c] : d.rhs.coefficients())
            out.push_back(v);
        break;
    case StatementKind::Havoc:
        out.push_back(d.lhs);
        break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace termdec
