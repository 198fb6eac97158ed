#include "termdec/program.hpp"

#include <algorithm>
#include <stdexcept>

namespace termdec {

Program::Program(std::vector<std::string> location_names, Location initial, std::vector<Edge> edges)
    : location_names_(std::move(location_names)), initial_(initial), edges_(std::move(edges)) {
    if (initial_ >= location_names_.size())
        throw std::invalid_argument("initial location out of range");
    for (const Edge& e : edges_) {
        if (e.src >= location_names_.size() || e.dst >= location_names_.size())
            throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.src, a.stmt, a.dst) < std::tie(b.src, b.stmt, b.dst);
    });
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::vector<Edge> Program::out_edges(Location l) const {
    std::vector<Edge> out;
    for (const Edge& e : edges_)
        if (e.src == l)
            out.push_back(e);
    return out;
}

std::vector<Statement> Program::alphabet() const {
    std::vector<Statement> out;
    for (const Edge& e : edges_)
        out.push_back(e.stmt);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Variable> Program::variables() const {
    std::vector<Variable> out;
    for (const Edge& e : edges_)
        for (Variable v : e.stmt.variables())
            out.push_back(std::move(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Module::Module(Program program, Location final_location) : program_(std::move(program)), final_(final_location) {
    if (final_ >= program_.location_count())
        throw std::invalid_argument("final location out of range");
    if (final_ == program_.initial())
        return;  // degenerate single-zone module
    // The initial location must not be reachable from the final one,
    // otherwise no pre/post partition of the locations exists.
    std::vector<bool> seen(program_.location_count(), false);
    std::vector<Location> work{final_};
    seen[final_] = true;
    while (!work.empty()) {
        Location l = work.back();
        work.pop_back();
        for (const Edge& e : program_.edges()) {
            if (e.src == l && !seen[e.dst]) {
                seen[e.dst] = true;
                work.push_back(e.dst);
            }
        }
    }
    if (seen[program_.initial()])
        throw std::invalid_argument("module shape violation: initial location reachable from final location");
}

}  // namespace termdec
