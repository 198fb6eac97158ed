#include "termdec/report.hpp"

#include "termdec/frontend.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace termdec {

namespace {

using nlohmann::json;

std::string mode_name(OldrnkMode m) {
    switch (m) {
    case OldrnkMode::Inf: return "INF";
    case OldrnkMode::Finite: return "FINITE";
    case OldrnkMode::Absent: return "ABSENT";
    }
    return "ABSENT";
}

OldrnkMode mode_from_name(const std::string& s) {
    if (s == "INF")
        return OldrnkMode::Inf;
    if (s == "FINITE")
        return OldrnkMode::Finite;
    if (s == "ABSENT")
        return OldrnkMode::Absent;
    throw std::invalid_argument("unknown oldrnk mode: " + s);
}

PredicateRecord predicate_record(const Predicate& p) {
    PredicateRecord rec;
    rec.text = to_string(p);
    for (const Cube& c : p.cubes()) {
        CubeRecord cr;
        cr.mode = mode_name(c.mode());
        for (const Atom& a : c.atoms())
            cr.atoms.push_back(to_string(a));
        rec.cubes.push_back(std::move(cr));
    }
    return rec;
}

Predicate predicate_from_record(const PredicateRecord& rec) {
    std::vector<Cube> cubes;
    for (const CubeRecord& cr : rec.cubes) {
        std::vector<Atom> atoms;
        for (const std::string& s : cr.atoms)
            for (Atom a : parse_constraint_atoms(s))
                atoms.push_back(std::move(a));
        cubes.emplace_back(std::move(atoms), mode_from_name(cr.mode));
    }
    return Predicate(std::move(cubes));
}

ModuleRecord module_record(int index, const CertifiedModule& cm) {
    ModuleRecord rec;
    rec.index = index;
    rec.trivial = cm.rank.is_trivial();
    for (const auto& [v, c] : cm.rank.coefficients)
        rec.ranking_coefficients[v.name()] = to_string(c);
    rec.ranking_constant = to_string(cm.rank.constant);
    const Program& p = cm.module.program();
    rec.num_states = p.location_count();
    rec.initial_state = p.location_name(cm.module.initial());
    rec.final_state = p.location_name(cm.module.final_location());
    for (const Edge& e : p.edges())
        rec.edges.push_back({p.location_name(e.src), e.stmt.text(), p.location_name(e.dst)});
    for (const auto& [loc, pred] : cm.cert.at)
        rec.predicates[p.location_name(loc)] = predicate_record(pred);
    return rec;
}

std::string buchi_graph_cfg(const Buchi& b) {
    std::ostringstream os;
    if (!b.initial().empty())
        os << "init " << b.state_names()[b.initial().front()] << ";\n";
    for (const auto& [src, st, dst] : b.transitions())
        os << b.state_names()[src] << " -> " << b.state_names()[dst] << " : " << st.text() << ";\n";
    return os.str();
}

LassoRecord lasso_record(const LassoTrace& t) {
    LassoRecord rec;
    for (Statement st : t.stem)
        rec.stem.push_back(st.text());
    for (Statement st : t.loop)
        rec.loop.push_back(st.text());
    return rec;
}

json times_json(const TimesRecord& t) {
    return json{{"overall_s", t.overall_s},
                {"lasso_analysis_s", t.lasso_analysis_s},
                {"module_construction_s", t.module_construction_s},
                {"inclusion_s", t.inclusion_s}};
}

json counts_json(const CountsRecord& c) {
    return json{{"modules_trivial_rf", c.modules_trivial_rf},
                {"modules_nontrivial_rf", c.modules_nontrivial_rf},
                {"max_module_size", c.max_module_size}};
}

}  // namespace

Report make_report(const std::string& filename, const Program& p, const AnalysisResult& r) {
    Report rep;
    rep.filename = filename;
    rep.verdict = to_string(r.verdict);
    rep.iterations = r.stats.iterations;
    rep.times = {r.stats.overall_s, r.stats.lasso_analysis_s, r.stats.module_construction_s,
                 r.stats.inclusion_s};
    rep.counts = {r.stats.trivial_rf_modules, r.stats.nontrivial_rf_modules, r.stats.max_module_size};
    rep.program_cfg = render_cfg(p);
    int i = 0;
    for (const CertifiedModule& cm : r.modules)
        rep.modules.push_back(module_record(i++, cm));
    if (r.remainder.has_value()) {
        rep.remainder_cfg = buchi_graph_cfg(*r.remainder);
        for (StateId s = 0; s < r.remainder->state_count(); ++s)
            if (r.remainder->accepting(s))
                rep.remainder_accepting.push_back(r.remainder->state_names()[s]);
    }
    if (r.failed_lasso.has_value())
        rep.offending_lasso = lasso_record(*r.failed_lasso);
    rep.message = r.message;
    return rep;
}

nlohmann::json report_to_json(const Report& r) {
    json modules = json::array();
    for (const ModuleRecord& m : r.modules) {
        json edges = json::array();
        for (const EdgeRecord& e : m.edges)
            edges.push_back(json{{"from", e.from}, {"stmt", e.stmt}, {"to", e.to}});
        json preds = json::object();
        for (const auto& [loc, pr] : m.predicates) {
            json cubes = json::array();
            for (const CubeRecord& c : pr.cubes)
                cubes.push_back(json{{"mode", c.mode}, {"atoms", c.atoms}});
            preds[loc] = json{{"text", pr.text}, {"cubes", cubes}};
        }
        modules.push_back(json{{"index", m.index},
                               {"trivial", m.trivial},
                               {"ranking_function",
                                json{{"coefficients", m.ranking_coefficients},
                                     {"constant", m.ranking_constant}}},
                               {"num_states", m.num_states},
                               {"initial", m.initial_state},
                               {"final", m.final_state},
                               {"edges", edges},
                               {"predicates", preds}});
    }
    json j{{"filename", r.filename},
           {"verdict", r.verdict},
           {"iterations", r.iterations},
           {"times", times_json(r.times)},
           {"counts", counts_json(r.counts)},
           {"program_cfg", r.program_cfg},
           {"modules", modules},
           {"message", r.message}};
    if (r.remainder_cfg.has_value()) {
        j["remainder_cfg"] = *r.remainder_cfg;
        j["remainder_accepting"] = r.remainder_accepting;
    }
    if (r.offending_lasso.has_value())
        j["offending_lasso"] = json{{"stem", r.offending_lasso->stem}, {"loop", r.offending_lasso->loop}};
    return j;
}

Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.filename = j.at("filename").get<std::string>();
    r.verdict = j.at("verdict").get<std::string>();
    r.iterations = j.at("iterations").get<int>();
    const json& t = j.at("times");
    r.times = {t.at("overall_s").get<double>(), t.at("lasso_analysis_s").get<double>(),
               t.at("module_construction_s").get<double>(), t.at("inclusion_s").get<double>()};
    const json& c = j.at("counts");
    r.counts = {c.at("modules_trivial_rf").get<int>(), c.at("modules_nontrivial_rf").get<int>(),
                c.at("max_module_size").get<std::size_t>()};
    r.program_cfg = j.at("program_cfg").get<std::string>();
    for (const json& jm : j.at("modules")) {
        ModuleRecord m;
        m.index = jm.at("index").get<int>();
        m.trivial = jm.at("trivial").get<bool>();
        const json& rf = jm.at("ranking_function");
        m.ranking_coefficients = rf.at("coefficients").get<std::map<std::string, std::string>>();
        m.ranking_constant = rf.at("constant").get<std::string>();
        m.num_states = jm.at("num_states").get<std::size_t>();
        m.initial_state = jm.at("initial").get<std::string>();
        m.final_state = jm.at("final").get<std::string>();
        for (const json& je : jm.at("edges"))
            m.edges.push_back({je.at("from").get<std::string>(), je.at("stmt").get<std::string>(),
                               je.at("to").get<std::string>()});
        for (auto it = jm.at("predicates").begin(); it != jm.at("predicates").end(); ++it) {
            PredicateRecord pr;
            pr.text = it.value().at("text").get<std::string>();
            for (const json& jc : it.value().at("cubes"))
                pr.cubes.push_back(
                    {jc.at("mode").get<std::string>(), jc.at("atoms").get<std::vector<std::string>>()});
            m.predicates[it.key()] = std::move(pr);
        }
        r.modules.push_back(std::move(m));
    }
    if (j.contains("remainder_cfg")) {
        r.remainder_cfg = j.at("remainder_cfg").get<std::string>();
        r.remainder_accepting = j.at("remainder_accepting").get<std::vector<std::string>>();
    }
    if (j.contains("offending_lasso")) {
        LassoRecord lr;
        lr.stem = j.at("offending_lasso").at("stem").get<std::vector<std::string>>();
        lr.loop = j.at("offending_lasso").at("loop").get<std::vector<std::string>>();
        r.offending_lasso = std::move(lr);
    }
    r.message = j.at("message").get<std::string>();
    return r;
}

std::string stats_row_header() {
    std::ostringstream os;
    os << std::left << std::setw(24) << "filename" << std::right << std::setw(10) << "overall"
       << std::setw(10) << "lasso" << std::setw(10) << "modconst" << std::setw(10) << "inclusion"
       << std::setw(12) << "trivial-rf" << std::setw(14) << "nontrivial-rf" << std::setw(10)
       << "max-size";
    return os.str();
}

std::string emit_stats_row(const Report& r) {
    auto fmt = [](double s) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(2) << s << "s";
        return os.str();
    };
    std::ostringstream os;
    os << std::left << std::setw(24) << r.filename << std::right << std::setw(10)
       << fmt(r.times.overall_s) << std::setw(10) << fmt(r.times.lasso_analysis_s) << std::setw(10)
       << fmt(r.times.module_construction_s) << std::setw(10) << fmt(r.times.inclusion_s)
       << std::setw(12) << r.counts.modules_trivial_rf << std::setw(14)
       << r.counts.modules_nontrivial_rf << std::setw(10) << r.counts.max_module_size;
    return os.str();
}

CertifiedModule module_from_record(const ModuleRecord& m) {
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
    Location init = loc(m.initial_state);
    Location fin = loc(m.final_state);
    for (const auto& [name, pred] : m.predicates)
        loc(name);
    std::vector<Edge> edges;
    for (const EdgeRecord& e : m.edges)
        edges.push_back({loc(e.from), parse_statement_text(e.stmt), loc(e.to)});
    Program prog(names, init, std::move(edges));
    Module mod(std::move(prog), fin);
    RankingFunction rank;
    for (const auto& [v, cstr] : m.ranking_coefficients)
        rank.coefficients[Variable(v)] = rational_from_string(cstr);
    rank.constant = rational_from_string(m.ranking_constant);
    RankCertificate cert;
    for (const auto& [name, pred] : m.predicates)
        cert.at[ids.at(name)] = predicate_from_record(pred);
    return CertifiedModule{std::move(mod), std::move(rank), std::move(cert)};
}

RevalidationResult revalidate_report(const Report& r) {
    RevalidationResult out;
    for (const ModuleRecord& m : r.modules) {
        ++out.modules_checked;
        try {
            CertifiedModule cm = module_from_record(m);
            CheckResult check = check_certificate(cm);
            for (const CertificateViolation& v : check.violations)
                out.violations.push_back("module " + std::to_string(m.index) + ": " + v.detail);
        } catch (const std::exception& e) {
            out.violations.push_back("module " + std::to_string(m.index) + ": " + e.what());
        }
    }
    return out;
}

void write_dot_files(const std::string& dir, const Program& p, const AnalysisResult& r) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto write = [&dir](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir) / name);
        out << content;
    };
    write("program.dot", to_dot(p, "program"));
    for (std::size_t i = 0; i < r.modules.size(); ++i) {
        const CertifiedModule& cm = r.modules[i];
        std::vector<std::string> labels;
        for (Location l = 0; l < cm.module.program().location_count(); ++l) {
            auto it = cm.cert.at.find(l);
            labels.push_back(it == cm.cert.at.end() ? cm.module.program().location_name(l)
                                                    : to_string(it->second));
        }
        write("module_" + std::to_string(i) + ".dot",
              to_dot(module_to_buchi(cm.module), "module_" + std::to_string(i), &labels));
    }
    if (r.remainder.has_value())
        write("remainder.dot", to_dot(*r.remainder, "remainder"));
}

}  // namespace termdec
